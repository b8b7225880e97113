import numpy as np
import pytest

from elastinv.basis import evaluate_fingerprint
from elastinv.exceptions import ContractError, DomainError
from elastinv.orbit import compare_fingerprints, normalize, same_orbit, slot_deviations
from elastinv.tensor import ElasticityTensor, random_elasticity, random_rotation, rotate_elast


def test_rotated_copy_is_equivalent():
    e = random_elasticity(1)
    v = same_orbit(e, rotate_elast(random_rotation(2), e), 1e-6)
    assert v.equivalent and v.max_relative_deviation < 1e-10


def test_isotropic_pair_differs_in_mu():
    v = same_orbit(ElasticityTensor.isotropic(1, 1), ElasticityTensor.isotropic(1, 2), 1e-6)
    assert not v.equivalent and v.worst_slot == "μ"


def test_independent_tensors_differ():
    for seed in range(20):
        assert not same_orbit(random_elasticity(seed), random_elasticity(seed + 1000)).equivalent


def test_reflexive_and_symmetric():
    e1, e2 = random_elasticity(3), random_elasticity(4) * 2.5
    v = same_orbit(e1, e1)
    assert v.equivalent and v.max_relative_deviation == 0.0
    a, b = same_orbit(e1, e2), same_orbit(e2, e1)
    assert a.equivalent == b.equivalent
    assert abs(a.max_relative_deviation - b.max_relative_deviation) <= 1e-14


def test_tie_counts_as_equivalent():
    f1 = evaluate_fingerprint(random_elasticity(5))
    f2 = evaluate_fingerprint(random_elasticity(6))
    dev = slot_deviations(f1, f2).max()
    assert compare_fingerprints(f1, f2, tol=dev).equivalent
    assert not compare_fingerprints(f1, f2, tol=dev * (1 - 1e-12)).equivalent


def test_tolerance_must_be_positive():
    e = random_elasticity(0)
    with pytest.raises(ContractError):
        same_orbit(e, e, 0.0)


def test_normalize():
    e = random_elasticity(7, norm=5.0)
    unit, scale = normalize(e)
    assert scale == pytest.approx(5.0) and unit.norm == pytest.approx(1.0)
    _, one = normalize(unit)
    assert one == pytest.approx(1.0)
    with pytest.raises(DomainError):
        normalize(ElasticityTensor(np.zeros((6, 6))))


def test_verdict_json():
    d = same_orbit(random_elasticity(1), random_elasticity(2)).to_dict()
    assert set(d) == {"equivalent", "max_relative_deviation", "worst_slot", "tolerance"}
