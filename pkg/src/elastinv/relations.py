"""Exact-rational search for polynomial relations among invariants.

A target invariant of degree ``d`` is a polynomial in the others exactly
when it is a linear combination of the degree-``d`` *joints*: products of
lower-degree invariants plus the other degree-``d`` invariants. Evaluating
target and joints at ``m`` rational points gives a linear system
``M c = b`` over the rationals, and the question "does it have a solution"
is settled by comparing exact ranks. A solution is then checked at fresh
points; a rank jump shows that no relation exists among the joints at all
sample points (reported as evidence of independence).

The sample space is the 19 components of ``A``, ``D1`` and ``D2``; the
isotropic moduli are fixed to zero, so joints containing ``λ`` or ``μ``
vanish identically and are reported separately.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .basis import InvariantDescriptor, catalog251, evaluate_word
from .exceptions import ContractError
from .intermediates import compute_j, intermediate_tensors
from .tensor import harm2, harm4

VERIFY_POINTS = 10
# verification seeds live far away from fitting seeds 0..m-1
_VERIFY_OFFSET = 10 ** 6
_ISOTROPIC = ("λ", "μ")


@dataclass(frozen=True)
class RationalAssignment:
    """Nine components of ``A`` and five each of ``D1``, ``D2`` as fractions."""

    seed: int
    a: tuple
    d1: tuple
    d2: tuple

    def tensors(self):
        """Full exact ``(A, D1, D2)`` arrays of Fractions."""
        return harm4(list(self.a)), harm2(list(self.d1)), harm2(list(self.d2))

    def as_list(self) -> list:
        return list(self.a) + list(self.d1) + list(self.d2)


def sample_point(seed: int) -> RationalAssignment:
    """Deterministic rational point; numerators in [-20, 20], denominators in [1, 12]."""
    rng = np.random.default_rng([int(seed), 19])
    num = rng.integers(-20, 21, size=19)
    den = rng.integers(1, 13, size=19)
    vals = tuple(Fraction(int(n), int(d)) for n, d in zip(num, den))
    return RationalAssignment(int(seed), vals[:9], vals[9:14], vals[14:])


@lru_cache(maxsize=4096)
def _exact_inputs(seed: int):
    a, d1, d2 = sample_point(seed).tensors()
    tensors = intermediate_tensors(a, d1, d2)
    j = compute_j(a)
    scalars = {"λ": Fraction(0), "μ": Fraction(0),
               **{f"J{k}": Fraction(getattr(j, f"j{k}")) for k in range(2, 11)}}
    return tensors, scalars


@lru_cache(maxsize=65536)
def _exact_value(word: tuple, seed: int) -> Fraction:
    tensors, scalars = _exact_inputs(seed)
    return Fraction(evaluate_word(word, tensors, scalars))


def exact_value(descriptor: InvariantDescriptor, seed: int) -> Fraction:
    """Value of one invariant at ``sample_point(seed)`` in exact arithmetic."""
    return _exact_value(descriptor.word, int(seed))


# --------------------------------------------------------------------------
# joints
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Joint:
    """A product of catalog invariants (a single factor for same-degree joints)."""

    factors: tuple

    @property
    def name(self) -> str:
        if len(self.factors) == 1:
            return self.factors[0].name
        return " * ".join(f"({f.name})" if " " in f.name else f.name for f in self.factors)

    @property
    def degree(self) -> int:
        return sum(f.degree for f in self.factors)

    @property
    def vanishes(self) -> bool:
        """Identically zero on the sample space (contains λ or μ)."""
        return any(f.name in _ISOTROPIC for f in self.factors)

    def value(self, seed: int) -> Fraction:
        out = Fraction(1)
        for f in self.factors:
            out *= exact_value(f, seed)
        return out


def _unique(catalog):
    seen, out = set(), []
    for d in catalog:
        if d.word not in seen:
            seen.add(d.word)
            out.append(d)
    return out


def _products(low, degree, start=0, min_factors=2):
    """Multisets (nondecreasing index) of ``low`` entries with degrees summing to ``degree``."""
    if degree == 0:
        if min_factors <= 0:
            yield ()
        return
    for i in range(start, len(low)):
        d = low[i].degree
        if d <= degree:
            for rest in _products(low, degree - d, i, min_factors - 1):
                yield (low[i],) + rest


def _count_products(degrees, degree) -> int:
    """Number of multisets of at least two entries with the given total degree."""
    # ways[k] = multisets of total degree k (including the empty one)
    ways = [1] + [0] * degree
    for d in degrees:
        for k in range(d, degree + 1):
            ways[k] += ways[k - d]
    singles = sum(1 for d in degrees if d == degree)
    return ways[degree] - singles


def build_joints(target_degree: int, catalog, target=None, max_joints=None):
    """Joint monomials at ``target_degree``.

    Same-degree candidates (every catalog invariant of that degree other
    than ``target``) come first, then products of lower-degree invariants.
    Returns ``(joints, total)``; ``total`` exceeds ``len(joints)`` only when
    ``max_joints`` truncated the enumeration.
    """
    if target_degree < 2:
        raise ContractError("joints exist only from degree 2 up")
    entries = _unique(catalog)
    same = [d for d in entries
            if d.degree == target_degree and (target is None or d.name != target.name
                                              or d.table_degree != target.table_degree)]
    low = [d for d in entries if d.degree < target_degree]
    total = len(same) + _count_products([d.degree for d in low], target_degree)
    joints = [Joint((d,)) for d in same]
    for prod in _products(low, target_degree):
        if max_joints is not None and len(joints) >= max_joints:
            break
        joints.append(Joint(prod))
    if max_joints is not None:
        joints = joints[:max_joints]
    return joints, total


# --------------------------------------------------------------------------
# exact linear algebra
# --------------------------------------------------------------------------

def _row_reduce(rows, ncols):
    """Reduced row echelon form in place; returns pivot columns."""
    pivots, r = [], 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def exact_rank(matrix) -> int:
    rows = [[Fraction(x) for x in row] for row in matrix]
    return len(_row_reduce(rows, len(rows[0]) if rows else 0))


def solve_exact(matrix, rhs):
    """Solve ``M c = b`` over the rationals.

    Returns ``(rank_M, rank_Mb, solution)`` where ``solution`` is a
    particular solution (free variables zero) or None when inconsistent.
    """
    n = len(matrix[0]) if matrix else 0
    rows = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    pivots = _row_reduce(rows, n + 1)
    if pivots and pivots[-1] == n:
        return len(pivots) - 1, len(pivots), None
    sol = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        sol[c] = rows[r][n]
    return len(pivots), len(pivots), sol


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------

RELATION_FOUND = "relation-found"
INDEPENDENT = "independent-at-rank"


@dataclass(frozen=True)
class RelationReport:
    """Outcome of one relation search.

    ``rank`` is the column rank of the sample matrix over the non-vanishing
    joints (``num_joints`` of them) at ``num_samples`` points. An
    ``independent-at-rank`` status is evidence of independence, not a proof;
    with ``truncated`` set it only covers the enumerated joints.
    """

    target: InvariantDescriptor
    status: str
    joints: tuple
    coefficients: tuple
    rank: int
    num_samples: int
    num_joints: int
    vanishing_joints: tuple = ()
    total_joints: int = 0
    truncated: bool = False
    verified_points: int = 0
    note: str = ""

    @property
    def found(self) -> bool:
        return self.status == RELATION_FOUND

    def relation(self) -> dict:
        """Nonzero coefficients by joint name."""
        return {j.name: c for j, c in zip(self.joints, self.coefficients) if c != 0}

    def to_dict(self) -> dict:
        out = {
            "target": self.target.to_dict(),
            "status": self.status,
            "rank": self.rank,
            "num_samples": self.num_samples,
            "num_joints": self.num_joints,
            "total_joints": self.total_joints,
            "truncated": self.truncated,
            "vanishing_joints": [j.name for j in self.vanishing_joints],
            "note": self.note,
        }
        if self.found:
            out["coefficients"] = {k: str(v) for k, v in self.relation().items()}
            out["verified_points"] = self.verified_points
        return out


def find_relation(target: InvariantDescriptor, num_samples: int, catalog=None,
                  max_joints=None, seed: int = 0) -> RelationReport:
    """Decide whether ``target`` is a linear combination of its joints.

    Joints are built at the target's polynomial degree from ``catalog``
    (the 251 published entries by default). ``num_samples`` must cover the
    number of non-vanishing joints. Fitting uses sample seeds
    ``seed .. seed + num_samples - 1``; verification uses ten seeds far
    outside that range.
    """
    if num_samples < 0 or seed < 0:
        raise ContractError("num_samples and seed must be non-negative")
    catalog = catalog251() if catalog is None else list(catalog)
    if target.name in _ISOTROPIC:
        return RelationReport(target, INDEPENDENT, (), (), 0, int(num_samples), 0,
                              note="isotropic modulus; free generator outside the sample space")
    if target.degree < 2:
        joints, total = [], 0
    else:
        joints, total = build_joints(target.degree, catalog, target, max_joints)
    live = tuple(j for j in joints if not j.vanishes)
    dead = tuple(j for j in joints if j.vanishes)
    n = len(live)
    if num_samples < n:
        raise ContractError(f"need at least {n} samples for {n} joints, got {num_samples}")
    seeds = range(int(seed), int(seed) + int(num_samples))
    matrix = [[j.value(s) for j in live] for s in seeds]
    rhs = [exact_value(target, s) for s in seeds]
    truncated = total > len(joints)
    if n == 0:
        rank_m, rank_mb, sol = 0, int(any(rhs)), ([] if not any(rhs) else None)
    else:
        rank_m, rank_mb, sol = solve_exact(matrix, rhs)
    common = dict(num_samples=int(num_samples), num_joints=n, vanishing_joints=dead,
                  total_joints=total, truncated=truncated)
    if sol is None:
        note = "rank evidence over sampled points, not a proof"
        if truncated:
            note += "; joint list truncated"
        return RelationReport(target, INDEPENDENT, live, (), rank_m, note=note, **common)
    for k in range(VERIFY_POINTS):
        s = _VERIFY_OFFSET + int(seed) + int(num_samples) + k
        lhs = sum((c * j.value(s) for c, j in zip(sol, live) if c != 0), Fraction(0))
        if lhs != exact_value(target, s):
            return RelationReport(target, INDEPENDENT, live, (), rank_m,
                                  note="fitted combination failed at a fresh point; add samples",
                                  **common)
    return RelationReport(target, RELATION_FOUND, live, tuple(sol), rank_m,
                          verified_points=VERIFY_POINTS, **common)


def certify_table1_degree(d: int, num_samples: int, max_joints=None, seed: int = 0) -> list:
    """Relation search for every published entry listed under degree ``d``."""
    if not 1 <= d <= 11:
        raise ContractError("degree must lie in 1..11")
    catalog = catalog251()
    return [find_relation(t, num_samples, catalog, max_joints, seed)
            for t in catalog if t.table_degree == d]
