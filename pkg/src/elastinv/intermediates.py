"""Second-order intermediate tensors and the scalar invariants J2..J10.

Eleven symmetric tensors are contracted out of the harmonic parts::

    B_ij = A_iklm A_jklm          C_ij = A_ijkl B_kl        D_ij = A_ijkl B_km B_lm
    F_ij = A_ijkl D1_kl           H_ij = A_ipql A_jpqm D1_lm  M_ij = A_ijkl D1_km D1_lm
    G_ij = A_ijkl D2_kl           K_ij = A_ipql A_jpqm D2_lm  N_ij = A_ijkl D2_km D2_lm

plus D1 and D2 themselves. All contractions run over the full 81-entry
``A`` and accept float or exact (``object``) arrays alike.
"""

from dataclasses import dataclass, fields
from typing import NamedTuple

import numpy as np

from .harmonic import HarmonicParts
from .tensor import rotate_sym2

TENSOR_NAMES = ("D1", "D2", "B", "C", "D", "F", "G", "H", "K", "M", "N")
TENSOR_DEGREES = {"D1": 1, "D2": 1, "B": 2, "C": 3, "D": 5, "F": 2, "G": 2,
                  "H": 3, "K": 3, "M": 3, "N": 3}
SCALAR_NAMES = ("λ", "μ", "J2", "J3", "J4", "J5", "J6", "J7", "J8", "J9", "J10")
SCALAR_DEGREES = {"λ": 1, "μ": 1, **{f"J{d}": d for d in range(2, 11)}}


def _double_dot(a, t):
    """``A_ijkl T_kl``."""
    return np.einsum("ijkl,kl->ij", a, t)


def _aa_dot(a, t):
    """``A_ipql A_jpqm T_lm``."""
    w = np.einsum("jpqm,lm->jpql", a, t)
    return np.einsum("ipql,jpql->ij", a, w)


def intermediate_tensors(a, d1, d2) -> dict:
    """All eleven tensors as a name -> 3x3 array mapping."""
    b = np.einsum("iklm,jklm->ij", a, a)
    return {
        "D1": d1,
        "D2": d2,
        "B": b,
        "C": _double_dot(a, b),
        "D": _double_dot(a, b @ b),
        "F": _double_dot(a, d1),
        "G": _double_dot(a, d2),
        "H": _aa_dot(a, d1),
        "K": _aa_dot(a, d2),
        "M": _double_dot(a, d1 @ d1),
        "N": _double_dot(a, d2 @ d2),
    }


@dataclass(frozen=True, eq=False)
class IntermediateSet:
    d1: np.ndarray
    d2: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    f: np.ndarray
    g: np.ndarray
    h: np.ndarray
    k: np.ndarray
    m: np.ndarray
    n: np.ndarray

    def as_dict(self) -> dict:
        return {name: getattr(self, name.lower()) for name in TENSOR_NAMES}

    @staticmethod
    def degree(name: str) -> int:
        return TENSOR_DEGREES[name.upper()]

    def rotated(self, q: np.ndarray) -> "IntermediateSet":
        return IntermediateSet(*(rotate_sym2(q, getattr(self, f.name)) for f in fields(self)))


def compute_intermediates(parts: HarmonicParts) -> IntermediateSet:
    t = intermediate_tensors(parts.a, parts.d1, parts.d2)
    return IntermediateSet(*(t[name] for name in TENSOR_NAMES))


class JInvariants(NamedTuple):
    j2: float
    j3: float
    j4: float
    j5: float
    j6: float
    j7: float
    j8: float
    j9: float
    j10: float


def compute_j(a) -> JInvariants:
    """The nine invariants of a harmonic fourth-order tensor.

    ``P_ijkl = A_ijmn A_klmn`` and ``B2 = B B`` are formed internally only.
    """
    p = np.einsum("ijmn,klmn->ijkl", a, a)
    b = np.einsum("iklm,jklm->ij", a, a)
    b2 = b @ b

    def quad(x, t, y):
        return np.einsum("ij,ijkl,kl->", x, t, y)

    return JInvariants(
        j2=np.einsum("ijkl,ijkl->", a, a),
        j3=np.einsum("ijkl,ijkl->", p, a),
        j4=np.einsum("ij,ij->", b, b),
        j5=quad(b, a, b),
        j6=quad(b, p, b),
        j7=quad(b2, a, b),
        j8=quad(b2, p, b),
        j9=quad(b2, a, b2),
        j10=quad(b2, p, b2),
    )
