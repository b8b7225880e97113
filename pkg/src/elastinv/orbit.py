"""Orbit equivalence of elasticity tensors through their fingerprints."""

from dataclasses import dataclass

import numpy as np

from .basis import Fingerprint, catalog251, evaluate_fingerprint
from .exceptions import ContractError, DomainError
from .tensor import ElasticityTensor

DEFAULT_TOL = 1e-6


@dataclass(frozen=True)
class OrbitVerdict:
    equivalent: bool
    max_relative_deviation: float
    worst_slot: str
    tolerance: float = DEFAULT_TOL

    def to_dict(self) -> dict:
        return {"equivalent": self.equivalent,
                "max_relative_deviation": self.max_relative_deviation,
                "worst_slot": self.worst_slot,
                "tolerance": self.tolerance}


def normalize(e: ElasticityTensor):
    """Return ``(e / |e|, |e|)``; the zero tensor has no direction."""
    scale = e.norm
    if scale == 0.0:
        raise DomainError("cannot normalize the zero tensor")
    return e * (1.0 / scale), scale


def slot_deviations(f1: Fingerprint, f2: Fingerprint) -> np.ndarray:
    """Per-slot relative deviation, symmetric in its arguments.

    Both fingerprints are brought to a common scale (the mean of the two
    source norms, each slot divided by scale**degree) before comparing
    against ``1 + max(|v1|, |v2|)``.
    """
    scale = 0.5 * (f1.norm + f2.norm)
    if scale == 0.0:
        scale = 1.0
    w = float(scale) ** -f1.degrees.astype(float)
    v1, v2 = f1.values * w, f2.values * w
    return np.abs(v1 - v2) / (1.0 + np.maximum(np.abs(v1), np.abs(v2)))


def compare_fingerprints(f1: Fingerprint, f2: Fingerprint, tol: float = DEFAULT_TOL) -> OrbitVerdict:
    if tol <= 0:
        raise ContractError("tol must be positive")
    dev = slot_deviations(f1, f2)
    worst = int(np.argmax(dev))
    return OrbitVerdict(bool(dev[worst] <= tol), float(dev[worst]), catalog251()[worst].name, tol)


def same_orbit(e1: ElasticityTensor, e2: ElasticityTensor, tol: float = DEFAULT_TOL) -> OrbitVerdict:
    """Decide whether two tensors are related by a rotation.

    Ties at exactly ``tol`` count as equivalent.
    """
    return compare_fingerprints(evaluate_fingerprint(e1), evaluate_fingerprint(e2), tol)
