"""Harmonic decomposition of elasticity tensors.

An elasticity tensor splits into two isotropic moduli, two deviatoric
second-order tensors and one harmonic fourth-order tensor::

    E_ijkl = lam d_ij d_kl + mu (d_ik d_jl + d_il d_jk)
           + d_ij D1_kl + d_kl D1_ij
           + 1/2 (d_ik D2_jl + d_jk D2_il + d_il D2_jk + d_jl D2_ik)
           + A_ijkl
"""

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .tensor import (
    ElasticityTensor,
    deviator,
    harm4,
    harm4_components,
    rotate4,
    rotate_sym2,
    sym2,
    sym2_components,
)

_I = np.eye(3)


@dataclass(frozen=True, eq=False)
class HarmonicParts:
    """The five irreducible parts ``(lam, mu, d1, d2, a)``.

    ``d1`` and ``d2`` are traceless 3x3 arrays, ``a`` is the full 3x3x3x3
    harmonic tensor.
    """

    lam: float
    mu: float
    d1: np.ndarray
    d2: np.ndarray
    a: np.ndarray

    @classmethod
    def from_components(cls, lam, mu, d1, d2, a):
        """Build from compact vectors: 6-vectors for d1, d2 and 9 for a."""
        return cls(float(lam), float(mu), sym2(d1), sym2(d2), harm4(a))

    @property
    def a_components(self) -> np.ndarray:
        return harm4_components(self.a)

    def scaled(self, t: float) -> "HarmonicParts":
        return HarmonicParts(t * self.lam, t * self.mu, t * self.d1, t * self.d2, t * self.a)

    def rotated(self, q: np.ndarray) -> "HarmonicParts":
        return HarmonicParts(self.lam, self.mu, rotate_sym2(q, self.d1),
                             rotate_sym2(q, self.d2), rotate4(q, self.a))

    def to_dict(self) -> dict:
        return {
            "lambda": float(self.lam),
            "mu": float(self.mu),
            "d1": [float(x) for x in sym2_components(self.d1)],
            "d2": [float(x) for x in sym2_components(self.d2)],
            "a": [float(x) for x in self.a_components],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "HarmonicParts":
        return cls.from_components(data["lambda"], data["mu"], data["d1"], data["d2"], data["a"])


def _isotropic_terms(lam, mu):
    lam_term = lam * np.einsum("ij,kl->ijkl", _I, _I)
    mu_term = mu * (np.einsum("ik,jl->ijkl", _I, _I) + np.einsum("il,jk->ijkl", _I, _I))
    return lam_term, mu_term


def _d1_term(d1):
    return np.einsum("ij,kl->ijkl", _I, d1) + np.einsum("kl,ij->ijkl", _I, d1)


def _d2_term(d2):
    return 0.5 * (np.einsum("ki,jl->ijkl", _I, d2) + np.einsum("kj,il->ijkl", _I, d2)
                  + np.einsum("li,jk->ijkl", _I, d2) + np.einsum("lj,ik->ijkl", _I, d2))


def composed_terms(parts: HarmonicParts) -> list:
    """The five full-tensor terms whose sum is the elasticity tensor."""
    lam_term, mu_term = _isotropic_terms(parts.lam, parts.mu)
    return [lam_term, mu_term, _d1_term(parts.d1), _d2_term(parts.d2), np.asarray(parts.a, float)]


def compose(parts: HarmonicParts) -> ElasticityTensor:
    return ElasticityTensor.from_full(sum(composed_terms(parts)))


def decompose(e: ElasticityTensor) -> HarmonicParts:
    """Project an elasticity tensor onto its five irreducible parts.

    Uses the two independent traces ``E_ijkk`` (dilatational) and ``E_ikjk``
    (Voigt). Their isotropic parts give the moduli, their deviators give a
    2x2 linear system for ``d1`` and ``d2``; the remainder is ``a``.
    """
    full = e.full
    dil = np.einsum("ijkk->ij", full)
    voi = np.einsum("ikjk->ij", full)
    # 3(3 lam + 2 mu) = tr dil, 3(lam + 4 mu) = tr voi
    s, t = np.trace(dil) / 3.0, np.trace(voi) / 3.0
    mu = (3 * t - s) / 10.0
    lam = t - 4 * mu
    # dev(dil) = 3 D1 + 2 D2, dev(voi) = 2 D1 + 5/2 D2 (determinant 7/2)
    p, q = deviator(dil), deviator(voi)
    d1 = (2.5 * p - 2 * q) / 3.5
    d2 = (3 * q - 2 * p) / 3.5
    d1 = (d1 + d1.T) / 2
    d2 = (d2 + d2.T) / 2
    lam_term, mu_term = _isotropic_terms(lam, mu)
    a = full - lam_term - mu_term - _d1_term(d1) - _d2_term(d2)
    # project onto the symmetric part; a is exactly symmetric in exact arithmetic
    a = harm4(harm4_components(_full_symmetrize(a)))
    return HarmonicParts(float(lam), float(mu), d1, d2, a)


def _full_symmetrize(a):
    return sum(a.transpose(p) for p in permutations(range(4))) / 24.0
