"""scikit-learn compatible transformers over batches of elasticity tensors.

Each row of ``X`` is one tensor given by the 21 upper-triangular entries of
its raw Voigt matrix, row by row (``C11, C12, ..., C16, C22, ..., C66``).
All transformers are stateless: ``fit`` only validates the input and
records ``n_features_in_``.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .basis import catalog251, evaluate_fingerprint
from .exceptions import ContractError
from .harmonic import HarmonicParts, compose, decompose
from .reconstruct import DEFAULT_TIE_TOL, reconstruct
from .tensor import ElasticityTensor

N_VOIGT_FEATURES = 21
_TRIU = np.triu_indices(6)
PART_FEATURES = (["lambda", "mu"] + [f"d1_{k}" for k in ("11", "22", "33", "23", "13", "12")]
                 + [f"d2_{k}" for k in ("11", "22", "33", "23", "13", "12")]
                 + [f"a_{k}" for k in ("1111", "1112", "1113", "1122", "1123",
                                       "1222", "1223", "2222", "2223")])


def tensor_to_row(e: ElasticityTensor) -> np.ndarray:
    return e.voigt[_TRIU].copy()


def row_to_tensor(row) -> ElasticityTensor:
    row = np.asarray(row, dtype=float)
    if row.shape != (N_VOIGT_FEATURES,):
        raise ContractError(f"expected {N_VOIGT_FEATURES} Voigt entries, got shape {row.shape}")
    c = np.zeros((6, 6))
    c[_TRIU] = row
    c = c + np.triu(c, 1).T
    return ElasticityTensor(c)


def _parts_row(p: HarmonicParts) -> np.ndarray:
    d = p.to_dict()
    return np.array([d["lambda"], d["mu"], *d["d1"], *d["d2"], *d["a"]])


def _row_parts(row) -> HarmonicParts:
    row = np.asarray(row, dtype=float)
    return HarmonicParts.from_components(row[0], row[1], row[2:8], row[8:14], row[14:23])


class _TensorTransformer(TransformerMixin, BaseEstimator):
    """Shared input validation for the transformers below."""

    def _check(self, X, reset):
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != N_VOIGT_FEATURES:
            raise ValueError(f"X has {X.shape[1]} features; each row must hold "
                             f"{N_VOIGT_FEATURES} upper-triangular Voigt entries")
        if reset:
            self.n_features_in_ = X.shape[1]
        return X

    def fit(self, X, y=None):
        self._check(X, reset=True)
        return self

    def _rows(self, X):
        check_is_fitted(self, "n_features_in_")
        return [row_to_tensor(r) for r in self._check(X, reset=False)]


class HarmonicDecomposer(_TensorTransformer):
    """Map tensors to their harmonic parts (23 columns, see ``PART_FEATURES``).

    ``inverse_transform`` recomposes the Voigt rows.
    """

    def transform(self, X):
        return np.array([_parts_row(decompose(e)) for e in self._rows(X)])

    def inverse_transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != len(PART_FEATURES):
            raise ValueError(f"expected {len(PART_FEATURES)} harmonic-part columns, got {X.shape[1]}")
        return np.array([tensor_to_row(compose(_row_parts(r))) for r in X])

    def get_feature_names_out(self, input_features=None):
        return np.array(PART_FEATURES, dtype=object)


class FingerprintTransformer(_TensorTransformer):
    """Map tensors to their 251 rotation-invariant fingerprint values.

    Parameters
    ----------
    scale_invariant : bool, default=False
        Divide each slot by ``norm**degree`` so that tensors differing only
        by a positive factor map to the same row.
    """

    def __init__(self, scale_invariant=False):
        self.scale_invariant = scale_invariant

    def transform(self, X):
        out = []
        for e in self._rows(X):
            fp = evaluate_fingerprint(e)
            v = fp.values.copy()
            if self.scale_invariant and fp.norm > 0:
                v = v * fp.norm ** -fp.degrees.astype(float)
            out.append(v)
        return np.array(out)

    def get_feature_names_out(self, input_features=None):
        return np.array([d.name for d in catalog251()], dtype=object)


class CanonicalFormTransformer(_TensorTransformer):
    """Map tensors to the harmonic parts of a canonical orbit representative.

    Rotated copies of a tensor map to (numerically) the same row in the
    generic case; see :func:`elastinv.reconstruct.reconstruct`.

    Parameters
    ----------
    tie_tol : float, default=1e-9
        Relative dead zone for eigenvalue ties and degenerate-branch guards.
    """

    def __init__(self, tie_tol=DEFAULT_TIE_TOL):
        self.tie_tol = tie_tol

    def fit(self, X, y=None):
        if not self.tie_tol > 0:
            raise ValueError("tie_tol must be positive")
        return super().fit(X, y)

    def transform(self, X):
        return np.array([_parts_row(reconstruct(e, self.tie_tol).parts) for e in self._rows(X)])

    def get_feature_names_out(self, input_features=None):
        return np.array(PART_FEATURES, dtype=object)
