"""Fixed-dimension tensor values, the SO(3) action and Voigt storage.

Second-order symmetric tensors and fourth-order tensors are plain numpy
arrays of shape ``(3, 3)`` and ``(3, 3, 3, 3)``; helpers convert to and from
their compact component vectors. Everything here is dtype-agnostic where it
matters, so the same code runs on ``float64`` and on ``object`` arrays of
:class:`fractions.Fraction` (used by the exact relation search).
"""

from dataclasses import dataclass
from itertools import permutations, product
from typing import NamedTuple, Sequence

import numpy as np
from scipy.spatial.transform import Rotation as _ScipyRotation

from .exceptions import ContractError, FormatError

# Voigt index map 11->1, 22->2, 33->3, 23->4, 13->5, 12->6 (0-based here).
VOIGT_PAIRS = ((0, 0), (1, 1), (2, 2), (1, 2), (0, 2), (0, 1))
_VOIGT_INDEX = np.array([[0, 5, 4], [5, 1, 3], [4, 3, 2]])

# Stored components of a harmonic fourth-order tensor, in storage order.
HARM4_KEYS = ("1111", "1112", "1113", "1122", "1123", "1222", "1223", "2222", "2223")

_HARM4_DERIVED = {
    "1133": lambda c: -c[0] - c[3],
    "1233": lambda c: -c[1] - c[5],
    "1333": lambda c: -c[2] - c[6],
    "2233": lambda c: -c[3] - c[7],
    "2333": lambda c: -c[4] - c[8],
    "3333": lambda c: c[0] + 2 * c[3] + c[7],
}


def _is_exact(values) -> bool:
    return any(not isinstance(v, (float, np.floating)) and not isinstance(v, (int, np.integer))
               for v in np.ravel(np.asarray(values, dtype=object)))


def _empty(shape, exact):
    if exact:
        out = np.empty(shape, dtype=object)
        out.fill(0)
        return out
    return np.zeros(shape)


# --------------------------------------------------------------------------
# second-order symmetric tensors
# --------------------------------------------------------------------------

def sym2(components: Sequence) -> np.ndarray:
    """Build a symmetric 3x3 matrix from ``(t11, t22, t33, t23, t13, t12)``."""
    c = list(components)
    if len(c) != 6:
        raise ContractError(f"a symmetric tensor has 6 components, got {len(c)}")
    out = _empty((3, 3), _is_exact(c))
    for value, (i, j) in zip(c, VOIGT_PAIRS):
        out[i, j] = value
        out[j, i] = value
    return out


def sym2_components(t: np.ndarray) -> np.ndarray:
    """Inverse of :func:`sym2`; off-diagonal entries are averaged."""
    t = np.asarray(t)
    return np.array([(t[i, j] + t[j, i]) / 2 if i != j else t[i, i] for i, j in VOIGT_PAIRS],
                    dtype=t.dtype)


def harm2(components: Sequence) -> np.ndarray:
    """Build a traceless symmetric matrix from its five independent entries.

    Order is ``(t11, t22, t23, t13, t12)``; ``t33 = -t11 - t22``.
    """
    c = list(components)
    if len(c) != 5:
        raise ContractError(f"a deviatoric tensor has 5 components, got {len(c)}")
    t11, t22, t23, t13, t12 = c
    return sym2([t11, t22, -t11 - t22, t23, t13, t12])


def deviator(t: np.ndarray) -> np.ndarray:
    """``t - tr(t)/3 * I``."""
    return t - np.trace(t) / 3.0 * np.eye(3)


# --------------------------------------------------------------------------
# harmonic fourth-order tensors
# --------------------------------------------------------------------------

def harm4(components: Sequence) -> np.ndarray:
    """Expand the nine stored components into the full 81-entry tensor.

    The six remaining index multisets come from tracelessness; the rest
    follows from full index symmetry.
    """
    c = list(components)
    if len(c) != 9:
        raise ContractError(f"a harmonic fourth-order tensor has 9 components, got {len(c)}")
    values = dict(zip(HARM4_KEYS, c))
    values.update({key: fn(c) for key, fn in _HARM4_DERIVED.items()})
    out = _empty((3, 3, 3, 3), _is_exact(c))
    for idx in product(range(3), repeat=4):
        out[idx] = values["".join(str(i + 1) for i in sorted(idx))]
    return out


def harm4_components(a: np.ndarray) -> np.ndarray:
    """Read the nine stored components out of a full fourth-order array."""
    a = np.asarray(a)
    return np.array([a[tuple(int(ch) - 1 for ch in key)] for key in HARM4_KEYS], dtype=a.dtype)


class HarmonicCheck(NamedTuple):
    ok: bool
    max_violation: float
    where: str


def is_harmonic4(a: np.ndarray, tol: float = 1e-12) -> HarmonicCheck:
    """Check full index symmetry and tracelessness of a raw 3x3x3x3 array.

    Violations are measured relative to the Frobenius norm of ``a``. The
    report names the worst offending condition with 1-based indices.
    """
    if tol <= 0:
        raise ContractError("tol must be positive")
    a = np.asarray(a, dtype=float)
    if a.shape != (3, 3, 3, 3):
        raise FormatError(f"expected shape (3, 3, 3, 3), got {a.shape}")
    worst, where = 0.0, ""
    for idx in product(range(3), repeat=4):
        for perm in set(permutations(idx)):
            v = abs(a[idx] - a[perm])
            if v > worst:
                worst, where = v, "symmetry " + "".join(str(i + 1) for i in idx)
    traces = np.einsum("iikl->kl", a)
    for k, l in product(range(3), repeat=2):
        v = abs(traces[k, l])
        if v > worst:
            worst, where = v, f"trace over (k,l)=({k + 1},{l + 1})"
    bound = tol * np.linalg.norm(a)
    return HarmonicCheck(bool(worst <= bound), float(worst), where)


# --------------------------------------------------------------------------
# rotations
# --------------------------------------------------------------------------

def check_rotation(q: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    if q.shape != (3, 3):
        raise ContractError(f"rotation must be 3x3, got {q.shape}")
    if np.abs(q.T @ q - np.eye(3)).max() > tol or abs(np.linalg.det(q) - 1.0) > tol:
        raise ContractError("matrix is not a proper rotation")
    return q


def random_rotation(seed: int) -> np.ndarray:
    """Haar-uniform rotation matrix, deterministic per seed."""
    q = _ScipyRotation.random(random_state=np.random.default_rng(seed)).as_matrix()
    # re-orthonormalize so the determinant sits within rounding of 1
    u, _, vt = np.linalg.svd(q)
    return u @ vt


def plane_rotation(i: int, j: int, angle: float) -> np.ndarray:
    """Rotation by ``angle`` in the (i, j) coordinate plane, turning e_i towards e_j.

    ``plane_rotation(0, 2, theta)`` is the anticlockwise 1-3 plane rotation
    used by the in-plane canonicalizations.
    """
    c, s = np.cos(angle), np.sin(angle)
    q = np.eye(3)
    q[i, i] = q[j, j] = c
    q[i, j] = -s
    q[j, i] = s
    return q


def rotate_sym2(q: np.ndarray, t: np.ndarray) -> np.ndarray:
    """``Q T Q^T``, symmetrized against rounding."""
    r = q @ t @ q.T
    return (r + r.T) / 2


def rotate4(q: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Apply ``T'_ijkl = Q_ia Q_jb Q_kc Q_ld T_abcd`` to any 3x3x3x3 array."""
    return np.einsum("ia,jb,kc,ld,abcd->ijkl", q, q, q, q, t, optimize=True)


def rotate_harm4(q: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Rotate a harmonic tensor given as 9 components or a full array.

    Returns the same representation that was passed in.
    """
    a = np.asarray(a)
    if a.shape == (9,):
        return harm4_components(rotate4(q, harm4(a)))
    return rotate4(q, a)


# --------------------------------------------------------------------------
# elasticity tensors
# --------------------------------------------------------------------------

def _symmetrize_full(e: np.ndarray) -> np.ndarray:
    e = (e + e.transpose(1, 0, 2, 3)) / 2
    e = (e + e.transpose(0, 1, 3, 2)) / 2
    return (e + e.transpose(2, 3, 0, 1)) / 2


@dataclass(frozen=True, eq=False)
class ElasticityTensor:
    """Fourth-order tensor with minor and major symmetries.

    Stored as the 6x6 matrix of raw components ``C_IJ = E_ijkl`` (no
    engineering shear factors).
    """

    voigt: np.ndarray

    def __post_init__(self):
        c = np.array(self.voigt, dtype=float)
        if c.shape != (6, 6):
            raise FormatError(f"Voigt matrix must be 6x6, got {c.shape}")
        if not np.all(np.isfinite(c)):
            raise FormatError("Voigt matrix contains non-finite entries")
        tol = 1e-12 * max(1.0, float(np.abs(c).max()))
        bad = np.argwhere(np.abs(c - c.T) > tol)
        if len(bad):
            i, j = bad[0]
            raise FormatError(f"Voigt matrix is not symmetric: C{i + 1}{j + 1} != C{j + 1}{i + 1}")
        c = (c + c.T) / 2
        c.setflags(write=False)
        object.__setattr__(self, "voigt", c)

    @classmethod
    def from_full(cls, e: np.ndarray) -> "ElasticityTensor":
        """Project a 3x3x3x3 array onto the symmetric subspace and store it."""
        e = _symmetrize_full(np.asarray(e, dtype=float))
        c = np.empty((6, 6))
        for a, (i, j) in enumerate(VOIGT_PAIRS):
            for b, (k, l) in enumerate(VOIGT_PAIRS):
                c[a, b] = e[i, j, k, l]
        return cls((c + c.T) / 2)

    @classmethod
    def isotropic(cls, lam: float, mu: float) -> "ElasticityTensor":
        c = np.zeros((6, 6))
        c[:3, :3] = lam
        c[np.arange(3), np.arange(3)] = lam + 2 * mu
        c[np.arange(3, 6), np.arange(3, 6)] = mu
        return cls(c)

    @property
    def full(self) -> np.ndarray:
        idx = _VOIGT_INDEX
        return self.voigt[idx[:, :, None, None], idx[None, None, :, :]]

    @property
    def norm(self) -> float:
        """Frobenius norm of the full 81-component tensor."""
        return float(np.linalg.norm(self.full))

    def allclose(self, other: "ElasticityTensor", rtol=1e-12) -> bool:
        scale = max(1.0, self.norm, other.norm)
        return bool(np.abs(self.voigt - other.voigt).max() <= rtol * scale)

    def __add__(self, other):
        return ElasticityTensor(self.voigt + other.voigt)

    def __sub__(self, other):
        return ElasticityTensor(self.voigt - other.voigt)

    def __mul__(self, scalar):
        return ElasticityTensor(self.voigt * float(scalar))

    __rmul__ = __mul__

    def __repr__(self):
        return f"ElasticityTensor(norm={self.norm:.6g})"


def rotate_elast(q: np.ndarray, e: ElasticityTensor) -> ElasticityTensor:
    return ElasticityTensor.from_full(rotate4(q, e.full))


def random_elasticity(seed: int, norm: float = 1.0) -> ElasticityTensor:
    """Gaussian random symmetric Voigt matrix scaled to the given full norm."""
    rng = np.random.default_rng(seed)
    c = rng.standard_normal((6, 6))
    e = ElasticityTensor((c + c.T) / 2)
    return e * (norm / e.norm)


# --------------------------------------------------------------------------
# traces
# --------------------------------------------------------------------------

def _as_factor(f):
    if isinstance(f, tuple):
        t, p = f
    else:
        t, p = f, 1
    if p not in (1, 2):
        raise ContractError(f"factor power must be 1 or 2, got {p}")
    return t, p


def trace_product(factors) -> float:
    """``tr(T_a^p_a T_b^p_b ...)`` evaluated by left-to-right 3x3 products.

    ``factors`` holds matrices or ``(matrix, power)`` pairs.
    """
    factors = list(factors)
    if not factors:
        raise ContractError("trace_product needs at least one factor")
    if len(factors) > 3:
        raise ContractError("trace_product takes at most three factors")
    m = None
    for f in factors:
        t, p = _as_factor(f)
        for _ in range(p):
            m = t if m is None else m @ t
    return m[0, 0] + m[1, 1] + m[2, 2]
