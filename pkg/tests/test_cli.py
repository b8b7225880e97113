import json

import numpy as np
import pytest

from elastinv.cli import run
from elastinv.io import read_tensor, write_tensor
from elastinv.tensor import ElasticityTensor, random_elasticity, random_rotation, rotate_elast


@pytest.fixture
def files(tmp_path):
    e = random_elasticity(4)
    paths = {
        "e": tmp_path / "e.json",
        "rot": tmp_path / "rot.csv",
        "other": tmp_path / "other.json",
        "iso": tmp_path / "iso.csv",
        "bad": tmp_path / "bad.json",
    }
    write_tensor(e, paths["e"])
    write_tensor(rotate_elast(random_rotation(8), e), paths["rot"])
    write_tensor(random_elasticity(5), paths["other"])
    write_tensor(ElasticityTensor.isotropic(2.0, 3.0), paths["iso"])
    paths["bad"].write_text('{"voigt": 3}')
    return paths


def call(capsys, *argv):
    code = run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_compare_exit_codes(files, capsys):
    code, out, _ = call(capsys, "compare", files["e"], files["rot"])
    assert code == 0 and out["equivalent"]
    code, out, _ = call(capsys, "compare", files["e"], files["other"])
    assert code == 1 and not out["equivalent"]
    code, out, err = call(capsys, "compare", files["e"], files["bad"])
    assert code == 2 and out is None and "error" in err


def test_decompose_isotropic(files, capsys):
    code, out, _ = call(capsys, "decompose", files["iso"])
    assert code == 0
    assert out["lambda"] == pytest.approx(2.0) and out["mu"] == pytest.approx(3.0)
    assert np.abs(out["a"]).max() < 1e-12


def test_invariants(files, capsys):
    code, out, _ = call(capsys, "invariants", files["e"], "--names")
    assert code == 0 and len(out["values"]) == len(out["names"]) == 251
    assert set(out["j"]) == {f"J{k}" for k in range(2, 11)}


def test_catalog(capsys):
    code, out, _ = call(capsys, "catalog", "--counts")
    assert code == 0
    assert out == {"1": 2, "2": 4, "3": 10, "4": 16, "5": 29, "6": 46, "7": 54,
                   "8": 49, "9": 29, "10": 10, "11": 2, "total": 251}
    code, out, _ = call(capsys, "catalog")
    assert len(out) == 251


def test_outputs_feed_back(files, capsys, tmp_path):
    for cmd in ("decompose", "reconstruct"):
        code, out, _ = call(capsys, cmd, files["e"])
        assert code == 0
        path = tmp_path / f"{cmd}.json"
        path.write_text(json.dumps(out))
        read_tensor(path)
        code, verdict, _ = call(capsys, "compare", files["e"], path)
        assert code == 0 and verdict["equivalent"]


def test_reconstruct_trace(files, capsys):
    code, out, _ = call(capsys, "reconstruct", files["e"], "--seed", 3)
    assert code == 0 and out["branch_trace"] == ["Case I"] and out["exact"]


def test_relations_target(capsys):
    code, out, _ = call(capsys, "relations", "--target", "tr B")
    assert code == 0 and out["status"] == "relation-found"
    assert out["coefficients"] == {"J2": "1"}
    code, out, err = call(capsys, "relations")
    assert code == 2 and "--degree" in err


def test_seed_environment(monkeypatch, files, capsys):
    monkeypatch.setenv("ELASTINV_SEED", "7")
    code, _, _ = call(capsys, "reconstruct", files["e"])
    assert code == 0
    monkeypatch.setenv("ELASTINV_SEED", "x")
    code, _, err = call(capsys, "reconstruct", files["e"])
    assert code == 2 and "ELASTINV_SEED" in err


def test_bad_arguments_exit_through_argparse(files, capsys):
    with pytest.raises(SystemExit) as exc:
        run(["compare", str(files["e"]), str(files["rot"]), "--tol", "0"])
    assert exc.value.code == 2
