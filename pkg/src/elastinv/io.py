"""Reading and writing elasticity tensors as Voigt JSON or CSV.

JSON files hold ``{"voigt": [[6 reals] x 6]}``; CSV files hold six rows of
six comma-separated reals. Components are raw (``C_IJ = E_ijkl``).

For convenience the JSON reader also accepts the package's own harmonic
parts document (``decompose`` output) and canonical representative
document (``reconstruct`` output), so command outputs can be fed back in.
"""

import csv
import io as _io
import json
from pathlib import Path

import numpy as np

from .exceptions import FormatError
from .harmonic import HarmonicParts, compose
from .tensor import ElasticityTensor


def _matrix(rows, source: str) -> np.ndarray:
    try:
        c = np.array(rows, dtype=float)
    except (TypeError, ValueError):
        raise FormatError(f"{source}: expected a 6x6 matrix of numbers") from None
    if c.shape != (6, 6):
        raise FormatError(f"{source}: expected a 6x6 matrix, got shape {c.shape}")
    return c


def voigt_from_dict(data, source: str = "input") -> ElasticityTensor:
    if not isinstance(data, dict):
        raise FormatError(f"{source}: expected a JSON object")
    if "voigt" in data:
        return ElasticityTensor(_matrix(data["voigt"], source))
    if "parts" in data:
        data = data["parts"]
    if {"lambda", "mu", "d1", "d2", "a"} <= set(data):
        try:
            return compose(HarmonicParts.from_dict(data))
        except (TypeError, ValueError) as exc:
            raise FormatError(f"{source}: malformed harmonic parts ({exc})") from None
    raise FormatError(f"{source}: no 'voigt' matrix found")


def voigt_to_dict(e: ElasticityTensor) -> dict:
    return {"voigt": e.voigt.tolist()}


def loads_json(text: str, source: str = "input") -> ElasticityTensor:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}: invalid JSON ({exc})") from None
    return voigt_from_dict(data, source)


def dumps_json(e: ElasticityTensor) -> str:
    return json.dumps(voigt_to_dict(e))


def loads_csv(text: str, source: str = "input") -> ElasticityTensor:
    rows = [r for r in csv.reader(_io.StringIO(text)) if any(cell.strip() for cell in r)]
    return ElasticityTensor(_matrix([[cell.strip() for cell in r] for r in rows], source))


def dumps_csv(e: ElasticityTensor) -> str:
    buf = _io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows([[repr(float(x)) for x in row] for row in e.voigt])
    return buf.getvalue()


def read_tensor(path) -> ElasticityTensor:
    """Read a tensor file; ``.csv`` selects CSV, anything else JSON."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FormatError(f"{path}: cannot read ({exc.strerror})") from None
    if path.suffix.lower() == ".csv":
        return loads_csv(text, str(path))
    return loads_json(text, str(path))


def write_tensor(e: ElasticityTensor, path) -> None:
    path = Path(path)
    text = dumps_csv(e) if path.suffix.lower() == ".csv" else dumps_json(e) + "\n"
    path.write_text(text)
