import numpy as np
import pytest
from sklearn.base import clone
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import StandardScaler

from elastinv.estimators import (
    PART_FEATURES,
    CanonicalFormTransformer,
    FingerprintTransformer,
    HarmonicDecomposer,
    row_to_tensor,
    tensor_to_row,
)
from elastinv.tensor import random_elasticity, random_rotation, rotate_elast


@pytest.fixture
def X():
    return np.array([tensor_to_row(random_elasticity(s)) for s in range(6)])


def test_row_roundtrip():
    e = random_elasticity(0)
    np.testing.assert_array_equal(row_to_tensor(tensor_to_row(e)).voigt, e.voigt)


def test_params_and_clone():
    t = FingerprintTransformer(scale_invariant=True)
    assert t.get_params() == {"scale_invariant": True}
    assert clone(t).scale_invariant
    assert clone(CanonicalFormTransformer(tie_tol=1e-6)).tie_tol == 1e-6


def test_decomposer_shapes_and_inverse(X):
    t = HarmonicDecomposer().fit(X)
    parts = t.transform(X)
    assert parts.shape == (6, len(PART_FEATURES)) and t.n_features_in_ == 21
    np.testing.assert_allclose(t.inverse_transform(parts), X, atol=1e-12)
    assert list(t.get_feature_names_out()) == PART_FEATURES


def test_fingerprint_rotation_and_scale_invariance(X):
    e = random_elasticity(9)
    rot = rotate_elast(random_rotation(1), e)
    rows = np.array([tensor_to_row(e), tensor_to_row(rot), tensor_to_row(e * 3.0)])
    out = FingerprintTransformer(scale_invariant=True).fit_transform(rows)
    assert out.shape == (3, 251)
    np.testing.assert_allclose(out[1], out[0], rtol=1e-9, atol=1e-12)
    np.testing.assert_allclose(out[2], out[0], rtol=1e-9, atol=1e-12)


def test_canonical_rows_agree_for_rotated_copies():
    e = random_elasticity(12)
    rows = np.array([tensor_to_row(e), tensor_to_row(rotate_elast(random_rotation(3), e))])
    out = CanonicalFormTransformer().fit_transform(rows)
    np.testing.assert_allclose(out[1], out[0], atol=1e-9)


def test_pipeline(X):
    out = make_pipeline(FingerprintTransformer(scale_invariant=True), StandardScaler()).fit_transform(X)
    assert out.shape == (6, 251)


def test_validation(X):
    with pytest.raises(ValueError):
        HarmonicDecomposer().fit(X[:, :20])
    t = HarmonicDecomposer().fit(X)
    with pytest.raises(ValueError):
        t.transform(X[:, :20])
    with pytest.raises(ValueError):
        CanonicalFormTransformer(tie_tol=0).fit(X)
