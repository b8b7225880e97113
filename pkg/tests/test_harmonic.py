import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elastinv.harmonic import HarmonicParts, compose, composed_terms, decompose
from elastinv.tensor import ElasticityTensor, random_elasticity, random_rotation, rotate4, rotate_elast, rotate_sym2, sym2

from conftest import random_parts, rel_err


def assert_parts_close(p, q, tol):
    scale = max(1.0, abs(q.lam), abs(q.mu), np.abs(q.d1).max(), np.abs(q.d2).max(), np.abs(q.a).max())
    assert abs(p.lam - q.lam) <= tol * scale
    assert abs(p.mu - q.mu) <= tol * scale
    for x, y in ((p.d1, q.d1), (p.d2, q.d2), (p.a, q.a)):
        assert np.abs(x - y).max() <= tol * scale


def test_isotropic_term():
    e = compose(HarmonicParts.from_components(1, 0, np.zeros(6), np.zeros(6), np.zeros(9))).full
    assert e[0, 0, 0, 0] == 1 and e[0, 0, 1, 1] == 1 and e[0, 1, 0, 1] == 0


def test_harmonic_term_only():
    a9 = np.random.default_rng(0).standard_normal(9)
    p = HarmonicParts.from_components(0, 0, np.zeros(6), np.zeros(6), a9)
    np.testing.assert_allclose(compose(p).full, p.a, atol=1e-15)


def test_d2_term_substitution():
    p = HarmonicParts.from_components(0, 0, np.zeros(6), [1, 1, -2, 0, 0, 0], np.zeros(9))
    e = compose(p).full
    assert e[0, 0, 0, 0] == pytest.approx(2.0)
    assert e[0, 0, 2, 2] == pytest.approx(0.0)
    # E1133 collects no d2 term; the mixed-index slot E1313 = (d2_11 + d2_33) / 2
    assert e[0, 2, 0, 2] == pytest.approx(-0.5)


def test_decompose_isotropic():
    p = decompose(ElasticityTensor.isotropic(2.0, 3.0))
    assert p.lam == pytest.approx(2.0) and p.mu == pytest.approx(3.0)
    assert np.abs(p.d1).max() < 1e-14 and np.abs(p.d2).max() < 1e-14 and np.abs(p.a).max() < 1e-14


def test_decompose_recovers_d1():
    d1 = np.diag([1.0, 0.0, -1.0])
    p = decompose(compose(HarmonicParts(0.0, 0.0, d1, np.zeros((3, 3)), np.zeros((3, 3, 3, 3)))))
    np.testing.assert_allclose(p.d1, d1, atol=1e-14)
    assert np.abs(p.d2).max() < 1e-14


def test_roundtrip_both_directions(rng):
    for seed in range(25):
        e = random_elasticity(seed)
        assert compose(decompose(e)).allclose(e, rtol=1e-12)
        p = random_parts(rng)
        assert_parts_close(decompose(compose(p)), p, 1e-12)


def test_linearity(rng):
    e1, e2 = random_elasticity(1), random_elasticity(2)
    a, b = 1.7, -0.3
    lhs = decompose(e1 * a + e2 * b)
    p1, p2 = decompose(e1), decompose(e2)
    rhs = HarmonicParts(a * p1.lam + b * p2.lam, a * p1.mu + b * p2.mu, a * p1.d1 + b * p2.d1,
                        a * p1.d2 + b * p2.d2, a * p1.a + b * p2.a)
    assert_parts_close(lhs, rhs, 1e-12)


def test_equivariance():
    for seed in range(10):
        e, q = random_elasticity(seed), random_rotation(100 + seed)
        p, pr = decompose(e), decompose(rotate_elast(q, e))
        assert pr.lam == pytest.approx(p.lam, abs=1e-12)
        assert pr.mu == pytest.approx(p.mu, abs=1e-12)
        np.testing.assert_allclose(pr.d1, rotate_sym2(q, p.d1), atol=1e-10)
        np.testing.assert_allclose(pr.d2, rotate_sym2(q, p.d2), atol=1e-10)
        np.testing.assert_allclose(pr.a, rotate4(q, p.a), atol=1e-10)


def test_term_gram_structure():
    # eight of the ten term pairs are orthogonal; (lambda, mu) and (d1, d2) overlap
    # by closed-form amounts, and the three groups (isotropic, deviatoric, harmonic)
    # split the squared norm exactly
    for seed in range(10):
        e = random_elasticity(seed)
        p = decompose(e)
        terms = composed_terms(p)
        gram = np.array([[np.sum(x * y) for y in terms] for x in terms])
        assert gram[0, 1] == pytest.approx(6 * p.lam * p.mu, abs=1e-12)
        assert gram[2, 3] == pytest.approx(4 * np.trace(p.d1 @ p.d2), abs=1e-12)
        off = gram.copy()
        off[0, 1] = off[1, 0] = off[2, 3] = off[3, 2] = 0
        np.fill_diagonal(off, 0)
        assert np.abs(off).max() < 1e-12
        iso, dev, harm = terms[0] + terms[1], terms[2] + terms[3], terms[4]
        total = np.sum(iso * iso) + np.sum(dev * dev) + np.sum(harm * harm)
        assert total == pytest.approx(e.norm ** 2, abs=1e-10)


def test_d_parts_traceless_and_dict_roundtrip(rng):
    p = decompose(random_elasticity(5))
    assert abs(np.trace(p.d1)) < 1e-12 and abs(np.trace(p.d2)) < 1e-12
    q = HarmonicParts.from_dict(p.to_dict())
    assert_parts_close(q, p, 1e-15)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(-100, 100, allow_nan=False), min_size=21, max_size=21))
def test_roundtrip_property(values):
    c = np.zeros((6, 6))
    c[np.triu_indices(6)] = values
    e = ElasticityTensor(c + np.triu(c, 1).T)
    back = compose(decompose(e))
    assert rel_err(back.voigt, e.voigt) <= 1e-12
