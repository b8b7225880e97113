"""Recover a canonical orbit representative from the intermediate tensors.

The harmonic part ``A`` is rebuilt component by component in a frame fixed
by the intermediate tensors themselves: ``B`` is diagonalized first, then
``D1`` (or ``D2``), then an in-plane rotation pins one more off-diagonal
entry. Which equations determine which components depends on the
eigenvalue pattern of ``B`` and on degeneracies of ``D1``; the branch
labels recorded in ``branch_trace`` follow the case numbering of the
original analysis (``"Case I"``, ``"II.2.2.1"``, ``"III*.2.2.2"`` ...).

Each step solves a small linear system. Rather than hard-coding every
coefficient, the system is assembled by evaluating the relevant
intermediate-tensor entries at probe values of the unknown components and
then solved; a residual check afterwards guards against a step being used
outside the conditions that make it linear.

Two sub-branches determine ``A`` only up to a rotation in the 1-3 plane
(the in-plane canonicalizations below); their representative lies in the
same orbit but need not equal the rotated input componentwise.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .exceptions import ContractError, InconsistentBranchError, UnsupportedLabelError
from .harmonic import HarmonicParts, compose, decompose
from .intermediates import compute_intermediates, compute_j, intermediate_tensors
from .tensor import (
    HARM4_KEYS,
    ElasticityTensor,
    harm4,
    random_rotation,
    rotate_elast,
    rotate_sym2,
)

DEFAULT_TIE_TOL = 1e-9

# branches shown to be empty; reaching one means degenerate numerics or a bug
CONTRADICTORY = frozenset({
    "II.1.2.2", "II.1.2.3", "II.1.2.4", "II.2.1.1", "II.2.1.2",
    "III.2.1.2", "III.2.2.1.4",
})

_SLOT = {k: i for i, k in enumerate(HARM4_KEYS)}


# --------------------------------------------------------------------------
# in-plane canonicalizations
# --------------------------------------------------------------------------

def prop1_canonicalize(alpha: float, beta: float, gamma: float):
    """Canonical ``(A1111, A1113)`` for the 4-fold in-plane family.

    Tensors with only ``A1122 = alpha``, ``A2222 = -2 alpha``,
    ``A1111 = beta``, ``A1113 = gamma`` nonzero share an orbit with
    ``A1111 = -3 alpha / 4``, ``A1113 = eta`` where
    ``eta = sqrt((beta + 3 alpha / 4)**2 + gamma**2)``.
    """
    eta = float(np.hypot(beta + 0.75 * alpha, gamma))
    return -0.75 * alpha, eta


def prop1_angle(alpha: float, beta: float, gamma: float) -> float:
    """1-3 plane angle carrying the family member to its canonical form."""
    phi = np.arctan2(gamma, beta + 0.75 * alpha)
    return float((np.pi - 2 * phi) / 8)


def prop2_canonicalize(alpha: float, beta: float, gamma: float):
    """Canonical ``(A1112, A1123)`` for the 3-fold in-plane family.

    Here ``A1122 = alpha``, ``A2222 = -2 alpha``, ``A1111 = -3 alpha / 4``,
    ``A1112 = beta``, ``A1123 = gamma``; the orbit representative has
    ``A1112 = 0`` and ``A1123 = sqrt(beta**2 + gamma**2)``.
    """
    return 0.0, float(np.hypot(beta, gamma))


def prop2_angle(alpha: float, beta: float, gamma: float) -> float:
    phi = np.arctan2(gamma, beta)
    return float((np.pi - 2 * phi) / 6)


# --------------------------------------------------------------------------
# frames
# --------------------------------------------------------------------------

def _proper(rows: np.ndarray) -> np.ndarray:
    q = np.array(rows, dtype=float)
    if np.linalg.det(q) < 0:
        q[-1] *= -1
    return q


def _eig_desc(t: np.ndarray):
    """Eigenvalues (descending) and a proper rotation whose rows are eigenvectors."""
    w, v = np.linalg.eigh(t)
    order = np.argsort(w)[::-1]
    return w[order], _proper(v[:, order].T)


def _plane13(t: np.ndarray) -> np.ndarray:
    """Rotation in the 1-3 plane that zeroes ``t[0, 2]`` with ``t11 >= t33``."""
    block = np.array([[t[0, 0], t[0, 2]], [t[2, 0], t[2, 2]]])
    w, v = np.linalg.eigh(block)
    v = v[:, ::-1]
    r = np.eye(3)
    r[np.ix_([0, 2], [0, 2])] = v.T
    return _proper_keep_axis2(r)


def _proper_keep_axis2(r):
    if np.linalg.det(r) < 0:
        r[2] *= -1
    return r


def _permutation(order) -> np.ndarray:
    return _proper(np.eye(3)[list(order)])


def canonical_frame(e: ElasticityTensor, tie_tol: float = DEFAULT_TIE_TOL):
    """Rotation diagonalizing ``B`` with descending eigenvalues, and the rotated parts.

    With ``A = 0`` every frame diagonalizes ``B``; the identity is returned.
    ``tie_tol`` is accepted for symmetry with :func:`reconstruct`; ties do
    not change the frame returned here.
    """
    if not tie_tol > 0:
        raise ContractError("tie_tol must be positive")
    parts = decompose(e)
    b = compute_intermediates(parts).b
    if np.trace(b) <= 0.0:
        return np.eye(3), parts
    _, q = _eig_desc(b)
    return q, parts.rotated(q)


# --------------------------------------------------------------------------
# the recovery
# --------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CanonicalRepresentative:
    """Outcome of :func:`reconstruct`.

    ``frame`` maps original coordinates to the canonical ones. ``exact`` is
    True when every component of ``A`` was determined, in which case
    ``parts`` equals the input rotated by ``frame``; otherwise ``parts`` is
    only orbit-equivalent.
    """

    frame: np.ndarray
    parts: HarmonicParts
    branch_trace: tuple
    part: str
    exact: bool

    def to_dict(self) -> dict:
        return {"frame": self.frame.tolist(), "parts": self.parts.to_dict(),
                "branch_trace": list(self.branch_trace), "part": self.part,
                "exact": self.exact}

    def compose(self) -> ElasticityTensor:
        return compose(self.parts)


def _eq(name, i, j):
    return lambda t: t[name][i, j]


def _eq_diff(name, ij, kl):
    return lambda t: t[name][ij] - t[name][kl]


class _Recovery:
    """State of one reconstruction: current frame, known components, trace."""

    def __init__(self, parts: HarmonicParts, tie_tol: float, seed: int = 0):
        self.tol = tie_tol
        self.seed = seed
        self.source = parts
        self.inter = compute_intermediates(parts).as_dict()
        self.j = compute_j(parts.a)
        self.scale_a = float(np.sqrt(max(self.j.j2, 0.0)))
        self.q = np.eye(3)
        self.t = self.inter
        self.known = {}
        self.trace = []
        self.exact = True
        n1, n2 = np.linalg.norm(parts.d1), np.linalg.norm(parts.d2)
        scale = float(np.sqrt(self.scale_a ** 2 + n1 ** 2 + n2 ** 2))
        if n1 <= tie_tol * scale and n2 <= tie_tol * scale:
            self.part = "first"
        elif n1 <= tie_tol * scale or n2 <= tie_tol * scale:
            self.part = "second"
        else:
            resid = parts.d2 - (np.sum(parts.d1 * parts.d2) / n1 ** 2) * parts.d1
            self.part = "second" if np.linalg.norm(resid) <= tie_tol * n2 else "third"
        # the driving deviator and its derived tensors
        if n1 > tie_tol * scale or self.part == "first":
            self.drv, self.lin, self.quad, self.sq = "D1", "F", "H", "M"
            self.oth, self.olin, self.osq = "D2", "G", "N"
        else:
            self.drv, self.lin, self.quad, self.sq = "D2", "G", "K", "N"
            self.oth, self.olin, self.osq = "D1", "F", "M"

    # frame handling --------------------------------------------------------

    def turn(self, r: np.ndarray):
        """Compose a further rotation onto the working frame."""
        self.q = r @ self.q
        self.t = {k: rotate_sym2(self.q, v) for k, v in self.inter.items()}

    # small predicates -------------------------------------------------------

    def zero_a(self, x) -> bool:
        """Is a linear combination of A components zero within the dead zone?"""
        return abs(x) <= self.tol * self.scale_a

    def zero_a2(self, x) -> bool:
        """Same for a quadratic quantity in A."""
        return abs(x) <= self.tol * self.scale_a ** 2

    def k(self, key):
        return self.known.get(key, 0.0)

    # equation solving -------------------------------------------------------

    def model(self, a9):
        return intermediate_tensors(harm4(a9), self.t["D1"], self.t["D2"])

    def solve(self, unknowns, equations, label):
        base = np.array([self.known.get(k, 0.0) for k in HARM4_KEYS])
        idx = [_SLOT[u] for u in unknowns]
        target = np.array([eq(self.t) for eq in equations])

        def resid(x):
            a = base.copy()
            a[idx] = x
            m = self.model(a)
            return np.array([eq(m) for eq in equations]) - target

        r0 = resid(np.zeros(len(idx)))
        jac = np.column_stack([resid(np.eye(len(idx))[i]) - r0 for i in range(len(idx))])
        x = np.linalg.lstsq(jac, -r0, rcond=None)[0]
        scale = max(np.abs(target).max(), np.abs(r0).max(), np.abs(jac).max() * self.scale_a, 1e-300)
        if np.abs(resid(x)).max() > 1e-6 * scale:
            raise InconsistentBranchError(label, "linear step left a residual")
        self.known.update(zip(unknowns, x))

    # branches --------------------------------------------------------------

    def run(self):
        if self.scale_a == 0.0:
            self.trace.append("Case II")
            self.known = {k: 0.0 for k in HARM4_KEYS}
            return
        b_eig, q = _eig_desc(self.inter["B"])
        self.turn(q)
        tr_b = float(np.sum(b_eig))
        eq12 = b_eig[0] - b_eig[1] <= self.tol * tr_b
        eq23 = b_eig[1] - b_eig[2] <= self.tol * tr_b
        gap_det = (b_eig[0] - b_eig[1]) * (b_eig[0] - b_eig[2]) * (b_eig[1] - b_eig[2])
        if not eq12 and not eq23 and gap_det > (self.tol * tr_b) ** 3:
            self.trace.append("Case I")
            self.case_one()
        elif eq12 and eq23:
            self.trace.append("Case II")
            self.turn(np.eye(3))
            self.case_two()
        else:
            self.trace.append("Case III")
            # equal pair into slots 1 and 3, the distinct eigenvalue into slot 2
            self.turn(_permutation((0, 2, 1) if eq12 else (1, 0, 2)))
            self.case_three()

    def case_one(self):
        t = self.t
        b = np.diag(t["B"])
        c, d = t["C"], t["D"]

        def pair(ci, di):
            # x (B11-B33) + y (B22-B33) = c, x (B11^2-B33^2) + y (B22^2-B33^2) = d
            x = (-ci * (b[1] + b[2]) + di) / ((b[0] - b[1]) * (b[0] - b[2]))
            y = (ci * (b[0] + b[2]) - di) / ((b[0] - b[1]) * (b[1] - b[2]))
            return x, y

        a1111, a1122 = pair(c[0, 0], d[0, 0])
        a1112, a1222 = pair(c[0, 1], d[0, 1])
        a1113, a1223 = pair(c[0, 2], d[0, 2])
        _, a2222 = pair(c[1, 1], d[1, 1])
        a1123, a2223 = pair(c[1, 2], d[1, 2])
        self.known = dict(zip(HARM4_KEYS, (a1111, a1112, a1113, a1122, a1123,
                                           a1222, a1223, a2222, a2223)))

    # Case II: B isotropic -----------------------------------------------------

    def case_two(self):
        if self.part == "first":
            self.j_solve()
            return
        w, q = _eig_desc(self.t[self.drv])
        span = max(abs(w).max(), 1e-300)
        gaps = [w[0] - w[1], w[1] - w[2]]
        if min(gaps) > self.tol * span:
            # distinct eigenvalues: the linear and squared contractions fix everything
            self.turn(q)
            eqs = [_eq(n, i, j) for n in (self.lin, self.sq)
                   for i, j in ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2))]
            self.solve(list(HARM4_KEYS), eqs, "Case II")
            return
        # repeated eigenvalue: distinct one into slot 2, so T = diag(d, -2d, d)
        self.turn(q)
        self.turn(_permutation((0, 2, 1) if gaps[0] < gaps[1] else (1, 0, 2)))
        self.turn(_plane13(self.t[self.lin]))
        self.read_from_linear()
        g = 2 * self.k("1122") + self.k("2222")
        if not self.zero_a(g):
            self.branch_ii1()
        else:
            self.branch_ii2(case="II")

    def read_from_linear(self):
        """Five components from the driver's linear contraction when T = diag(d, -2d, d)."""
        d = self.t[self.drv][0, 0]
        f = self.t[self.lin]
        self.known.update({
            "1122": -f[0, 0] / (3 * d),
            "1222": -f[0, 1] / (3 * d),
            "1223": 0.0,
            "2222": -f[1, 1] / (3 * d),
            "2223": -f[1, 2] / (3 * d),
        })

    def branch_ii1(self):
        h = self.quad
        self.solve(["1113", "1111"], [_eq(h, 0, 2), _eq_diff(h, (2, 2), (0, 0))], "II.1")
        if not self.zero_a(np.hypot(self.k("1222"), self.k("2223"))):
            self.solve(["1112", "1123"], [_eq("B", 0, 2), _eq_diff("B", (0, 0), (2, 2))], "II.1.1")
            self.trace.append("II.1.1")
            return
        self.known.update({"1222": 0.0, "2223": 0.0, "1113": 0.0})
        self.known["1111"] = -self.k("1122") - 2 * self.k("2222")
        a1111, a1122, a2222 = self.k("1111"), self.k("1122"), self.k("2222")
        c12 = 4 * a1111 + 9 * a1122 + 3 * a2222
        c23 = 4 * a1111 - a1122 - 2 * a2222
        self.known.update({"1112": 0.0, "1123": 0.0})
        if self.zero_a(c12) and self.zero_a(c23):
            raise InconsistentBranchError("II.1.2.4")
        if self.zero_a(c12):
            if self.zero_a(8 / 3 * a1111 - a2222):
                raise InconsistentBranchError("II.1.2.3")
            self.solve(["1112"], [_eq(h, 0, 1)], "II.1.2.3")
            if not self.zero_a(self.k("1112")):
                self.trace.append("II.1.2.3")
                return
        # c23 = 0 forces A1123 = 0 as well, so both remaining components vanish
        self.trace.append("II.1.2.1")

    def branch_ii2(self, case):
        """Shared tail for 2 A1122 + A2222 = 0 (Case II and the III.2.2.2 re-entry)."""
        third = self.part == "third"
        if case == "III":
            self.trace.append("III*.2.2.2" if third else "III.2.2.2")
        a = self.k("1122")
        self.known["2222"] = -2 * a
        if not self.zero_a(np.hypot(self.k("1222"), self.k("2223"))):
            self.solve(["1112", "1123"], [_eq("B", 0, 2), _eq_diff("B", (0, 0), (2, 2))], "II.2.1")
            det = (4 * self.k("1112") + 3 * self.k("1222")) ** 2 + (4 * self.k("1123") + self.k("2223")) ** 2
            if self.zero_a2(det):
                raise InconsistentBranchError("II.2.1.1" if self.zero_a(self.k("1112")) else "II.2.1.2")
            self.solve(["1111", "1113"], [_eq("B", 0, 1), _eq("B", 1, 2)], "II.2.1")
            self.trace.append("II.2.1")
            return
        self.known.update({"1222": 0.0, "2223": 0.0})
        # A1112^2 + A1123^2, read off B22 once the zero pattern is fixed
        s = self.t["B"][1, 1] / 4 - 2.5 * a ** 2
        if self.zero_a2(s):
            self.known.update({"1112": 0.0, "1123": 0.0})
            if third:
                self.branch_star_1()
                return
            a1111, a1113 = prop1_canonicalize(a, 0.0, 0.0)
            eta2 = self.t["B"][0, 0] / 4 - 15 / 16 * a ** 2
            self.known.update({"1111": a1111, "1113": float(np.sqrt(max(eta2, 0.0)))})
            self.exact = False
            self.trace.append("II.2.2.1")
            return
        self.known.update({"1111": -0.75 * a, "1113": 0.0})
        if third:
            self.branch_star_2()
            return
        if case == "II":
            eta = 5 * np.sqrt(2) / 4 * abs(a)
        else:
            eta = float(np.sqrt(s))
        self.known.update({"1112": 0.0, "1123": eta})
        self.exact = False
        self.trace.append("II.2.2.2")

    def _other_dets(self):
        o = self.t[self.oth]
        lin_det = (2 * o[0, 0] + o[1, 1]) ** 2 + o[0, 2] ** 2
        sq_det = (o[0, 1] ** 2 + o[1, 2] ** 2) ** 2
        span = np.abs(o).max()
        return lin_det > (self.tol * span) ** 2, sq_det > (self.tol * span ** 2) ** 2

    def branch_star_1(self):
        use_lin, use_sq = self._other_dets()
        if use_lin:
            self.solve(["1111", "1113"], [_eq(self.olin, 0, 0), _eq(self.olin, 0, 2)], "II*.2.2.1.1")
            self.trace.append("II*.2.2.1.1")
        elif use_sq:
            self.solve(["1111", "1113"], [_eq(self.osq, 0, 0), _eq(self.osq, 0, 2)], "II*.2.2.1.2")
            self.trace.append("II*.2.2.1.2")
        else:
            raise InconsistentBranchError("II*.2.2.1.2", "deviators are proportional")

    def branch_star_2(self):
        use_lin, use_sq = self._other_dets()
        if use_lin:
            self.solve(["1112", "1123"], [_eq(self.olin, 0, 1), _eq(self.olin, 1, 2)], "II*.2.2.2.1")
            self.trace.append("II*.2.2.2.1")
        elif use_sq:
            self.solve(["1112", "1123"], [_eq(self.osq, 0, 1), _eq(self.osq, 1, 2)], "II*.2.2.2.2")
            self.trace.append("II*.2.2.2.2")
        else:
            raise InconsistentBranchError("II*.2.2.2.2", "deviators are proportional")

    # Case III: B11 = B33 != B22 ---------------------------------------------

    def read_from_c(self):
        b, c = self.t["B"], self.t["C"]
        gap = b[1, 1] - b[2, 2]
        self.known.update({"1122": c[0, 0] / gap, "1222": c[0, 1] / gap, "1223": c[0, 2] / gap,
                           "2222": c[1, 1] / gap, "2223": c[1, 2] / gap})

    def case_three(self):
        if self.part == "first":
            self.j_solve()
            return
        self.turn(_plane13(self.t[self.drv]))
        d = self.t[self.drv]
        span = max(np.abs(d).max(), 1e-300)
        self.read_from_c()
        lin, sq = self.lin, self.sq
        if abs(d[1, 1] + 2 * d[0, 0]) > self.tol * span:
            eqs = [_eq(lin, 0, 0), _eq(lin, 0, 1), _eq(lin, 0, 2), _eq(lin, 1, 2)]
            self.solve(["1111", "1112", "1113", "1123"], eqs, "III.1")
            self.trace.append("III.1")
            return
        if np.hypot(d[0, 1], d[1, 2]) > self.tol * span:
            if (d[0, 1] ** 2 + d[1, 2] ** 2) ** 2 <= (self.tol * span ** 2) ** 2:
                raise InconsistentBranchError("III.2.1.2")
            eqs = [_eq(lin, 0, 0), _eq(lin, 0, 2), _eq(sq, 0, 0), _eq(sq, 0, 2)]
            self.solve(["1112", "1123", "1111", "1113"], eqs, "III.2.1.1")
            self.trace.append("III.2.1.1")
            return
        # T = diag(d, -2d, d): pin the frame with C13 = 0 instead
        self.turn(_plane13(self.t["C"]))
        self.read_from_c()
        self.known["1223"] = 0.0
        g = 2 * self.k("1122") + self.k("2222")
        if self.zero_a(g):
            self.branch_ii2(case="III")
            return
        h = self.quad
        self.solve(["1113", "1111"], [_eq(h, 0, 2), _eq_diff(h, (2, 2), (0, 0))], "III.2.2.1")
        if not self.zero_a(np.hypot(self.k("1222"), self.k("2223"))):
            self.solve(["1112", "1123"], [_eq_diff("B", (0, 0), (2, 2)), _eq("B", 0, 2)], "III.2.2.1")
            self.trace.append("III.2.2.1")
            return
        self.known.update({"1222": 0.0, "2223": 0.0, "1113": 0.0, "1112": 0.0, "1123": 0.0})
        self.known["1111"] = -self.k("1122") - 2 * self.k("2222")
        c12 = self.k("1122") - self.k("2222")
        c23 = self.k("1122") + 2 * self.k("2222")
        if self.zero_a(c12) and self.zero_a(c23):
            raise InconsistentBranchError("III.2.2.1.4")
        if self.zero_a(c12):
            self.solve(["1112"], [_eq(h, 0, 1)], "III.2.2.1.3")
            if not self.zero_a(self.k("1112")):
                self.trace.append("III.2.2.1.3")
                return
        elif self.zero_a(c23):
            self.solve(["1123"], [_eq(h, 1, 2)], "III.2.2.1.2")
            if not self.zero_a(self.k("1123")):
                self.trace.append("III.2.2.1.2")
                return
        self.trace.append("III.2.2.1.1")

    # no deviators: match the scalar invariants numerically -------------------

    def j_solve(self, attempts: int = 60):
        """Find A with the observed B, C, D and J3..J10 in the working frame.

        Without deviatoric parts the orbit of A is fixed by J2..J10 alone;
        the degenerate B patterns leave no closed-form route, so this step
        matches them by nonlinear least squares from seeded starts.
        """
        self.trace.append("J-solve")
        self.exact = False
        sa = self.scale_a
        t = self.t
        triu = np.triu_indices(3)
        target = np.concatenate([t["B"][triu] / sa ** 2, t["C"][triu] / sa ** 3,
                                 t["D"][triu] / sa ** 5,
                                 [getattr(self.j, f"j{k}") / sa ** k for k in range(3, 11)]])
        zero = np.zeros((3, 3))

        def resid(x):
            a = harm4(x)
            m = intermediate_tensors(a, zero, zero)
            jj = compute_j(a)
            got = np.concatenate([m["B"][triu], m["C"][triu], m["D"][triu],
                                  [getattr(jj, f"j{k}") for k in range(3, 11)]])
            return got - target

        rng = np.random.default_rng(self.seed)
        best = None
        for _ in range(attempts):
            x0 = rng.standard_normal(9)
            x0 /= np.sqrt(compute_j(harm4(x0)).j2)
            sol = least_squares(resid, x0, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15,
                                max_nfev=4000)
            err = np.abs(sol.fun).max()
            if best is None or err < best[0]:
                best = (err, sol.x)
            if err < 1e-11:
                break
        if best[0] > 1e-8:
            raise InconsistentBranchError("J-solve", f"no match found (residual {best[0]:.2e})")
        self.known = dict(zip(HARM4_KEYS, best[1] * sa))

    # assembly ---------------------------------------------------------------

    def result(self) -> CanonicalRepresentative:
        a9 = np.array([self.known[k] for k in HARM4_KEYS])
        parts = HarmonicParts(self.source.lam, self.source.mu, self.t["D1"], self.t["D2"], harm4(a9))
        b = np.diag(self.t["B"])
        final = _permutation(np.argsort(-b, kind="stable"))
        parts = parts.rotated(final)
        if self.trace == ["Case I"]:
            flip = _sign_convention(parts)
            final, parts = flip @ final, parts.rotated(flip)
        return CanonicalRepresentative(final @ self.q, parts, tuple(self.trace),
                                       self.part, self.exact)


# components whose sign flips with s1*s2 and with s1*s3 under diag(s1, s2, s3)
_SIGN_GROUPS = (
    (lambda p: [p.a[0, 0, 0, 1], p.a[0, 1, 1, 1], p.a[0, 1, 2, 2], p.d1[0, 1], p.d2[0, 1]]),
    (lambda p: [p.a[0, 0, 0, 2], p.a[0, 1, 1, 2], p.a[0, 2, 2, 2], p.d1[0, 2], p.d2[0, 2]]),
)


def _sign_convention(parts: HarmonicParts) -> np.ndarray:
    """Proper diagonal sign flip making the largest entry of each sign group positive.

    With ``B`` diagonal and simple, the frame is fixed only up to the four
    rotations ``diag(s1, s2, s3)``, ``s1 s2 s3 = 1``; this picks one.
    """
    c12, c13 = (float(np.sign(v[int(np.argmax(np.abs(v)))]) or 1.0)
                for v in (np.asarray(g(parts), dtype=float) for g in _SIGN_GROUPS))
    # s1 s2 = c12 and s1 s3 = c13 with s1 s2 s3 = 1
    return np.diag([c12 * c13, c13, c12])


def reconstruct(e: ElasticityTensor, tie_tol: float = DEFAULT_TIE_TOL,
                seed: int = 0) -> CanonicalRepresentative:
    """Rebuild a canonical representative of the orbit of ``e``.

    ``tie_tol`` is the relative dead zone used for eigenvalue ties and for
    every "is this quantity zero" guard. ``seed`` only affects the starting
    points of the numeric search used when both deviators vanish and ``B``
    has a repeated eigenvalue.
    """
    if not tie_tol > 0:
        raise ContractError("tie_tol must be positive")
    rec = _Recovery(decompose(e), tie_tol, seed)
    rec.run()
    return rec.result()


# --------------------------------------------------------------------------
# probe tensors for each reachable branch
# --------------------------------------------------------------------------

def _b_of(a9):
    return intermediate_tensors(harm4(a9), np.zeros((3, 3)), np.zeros((3, 3)))["B"]


def _constrained_a(rng, fixed: dict, residual, attempts=40):
    """Seeded least-squares search for a unit-J2 harmonic tensor meeting constraints."""
    free = [k for k in HARM4_KEYS if k not in fixed]

    def full(x):
        a = np.array([fixed.get(k, 0.0) for k in HARM4_KEYS])
        a[[_SLOT[k] for k in free]] = x
        return a

    def res(x):
        a = full(x)
        return np.append(residual(a), compute_j(harm4(a)).j2 - 1.0)

    for _ in range(attempts):
        sol = least_squares(res, rng.standard_normal(len(free)), method="trf",
                            xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=5000)
        if np.abs(sol.fun).max() < 1e-13:
            return full(sol.x)
    raise RuntimeError("could not construct a probe tensor")


def _b_isotropic(a):
    b = _b_of(a)
    return np.array([b[0, 1], b[0, 2], b[1, 2], b[0, 0] - b[1, 1], b[1, 1] - b[2, 2]])


def _b_transverse(a):
    b = _b_of(a)
    return np.array([b[0, 1], b[0, 2], b[1, 2], b[0, 0] - b[2, 2]])


def _a(**comps):
    return np.array([comps.get(f"a{k}", 0.0) for k in HARM4_KEYS])


def _family1(alpha, beta, gamma):
    return _a(a1122=alpha, a2222=-2 * alpha, a1111=beta, a1113=gamma)


def _family2(alpha, beta, gamma):
    return _a(a1122=alpha, a2222=-2 * alpha, a1111=-0.75 * alpha, a1112=beta, a1123=gamma)


def _nonzero(rng, lo=0.5, hi=1.5):
    return float(rng.choice([-1, 1]) * rng.uniform(lo, hi))


def _diag_dev(zeta):
    return np.diag([zeta, -2 * zeta, zeta])


def _random_dev(rng):
    m = rng.standard_normal((3, 3))
    m = (m + m.T) / 2
    return m - np.trace(m) / 3 * np.eye(3)


def _structured_dev(rng):
    e, p, q = _nonzero(rng), _nonzero(rng), _nonzero(rng)
    return np.array([[e, p, 0.0], [p, -2 * e, q], [0.0, q, e]])


def _probe_parts(label: str, rng):
    """(a9, d1, d2) in the working frame for one branch label."""
    alpha = _nonzero(rng)
    rho = _nonzero(rng)
    zeta = _nonzero(rng)
    dd = _diag_dev(zeta)
    phi = rng.uniform(0, 2 * np.pi)
    # B isotropic members of the two in-plane families
    iso1 = _family1(alpha, -0.75 * alpha + 1.25 * abs(alpha) * np.cos(phi),
                    1.25 * abs(alpha) * np.sin(phi))
    r2 = np.sqrt(25 / 8) * abs(alpha)
    iso2 = _family2(alpha, r2 * np.cos(phi), r2 * np.sin(phi))
    # generic (B transversely degenerate) members
    gen1 = _family1(alpha, rng.uniform(-1, 1), rng.uniform(-1, 1))
    if label == "Case I":
        a = _constrained_a(rng, {}, lambda a: (_b_of(a) - np.diag([3.0, 2.0, 1.0]) / 6)[np.triu_indices(3)])
        return a, _random_dev(rng), _random_dev(rng)
    if label == "Case II":
        a = _constrained_a(rng, {}, _b_isotropic)
        d = np.diag([1.0, 0.2, -1.2]) * zeta
        return a, d, rho * d
    if label == "II.1.1":
        a = _constrained_a(rng, {"1223": 0.0}, _b_isotropic)
        return a, dd, rho * dd
    if label == "II.1.2.1":
        b = _nonzero(rng)
        return _a(a1111=-4 * b, a1122=2 * b, a2222=b), dd, rho * dd
    if label == "II.2.1":
        # empty when B is isotropic; reached through the Case III re-entry
        a = _constrained_a(rng, {"1223": 0.0},
                           lambda a: np.append(_b_transverse(a), 2 * a[_SLOT["1122"]] + a[_SLOT["2222"]]))
        return a, dd, rho * dd
    if label == "II.2.2.1":
        return iso1, dd, rho * dd
    if label == "II.2.2.2":
        return iso2, dd, rho * dd
    if label == "III.1":
        a = _constrained_a(rng, {}, _b_transverse)
        return a, _random_dev(rng), rho * _random_dev(np.random.default_rng(0))
    if label == "III.2.1.1":
        a = _constrained_a(rng, {}, _b_transverse)
        d = _structured_dev(rng)
        return a, d, rho * d
    if label == "III.2.2.1":
        a = _constrained_a(rng, {"1223": 0.0}, _b_transverse)
        return a, dd, rho * dd
    if label == "III.2.2.1.1":
        x, y = _nonzero(rng), _nonzero(rng)
        return _a(a1111=-x - 2 * y, a1122=x, a2222=y), dd, rho * dd
    if label == "III.2.2.1.2":
        return _a(a1122=alpha, a2222=-alpha / 2, a1123=_nonzero(rng)), dd, rho * dd
    if label == "III.2.2.1.3":
        return _a(a1111=-3 * alpha, a1122=alpha, a2222=alpha, a1112=_nonzero(rng)), dd, rho * dd
    if label == "III.2.2.2":
        return gen1, dd, rho * dd
    if label == "II*.2.2.1.1":
        return iso1, dd, _random_dev(rng)
    if label == "II*.2.2.1.2":
        return iso1, dd, _structured_dev(rng)
    if label == "II*.2.2.2.1":
        return iso2, dd, _random_dev(rng)
    if label == "II*.2.2.2.2":
        return iso2, dd, _structured_dev(rng)
    if label == "III*.2.2.2":
        return gen1, dd, _random_dev(rng)
    raise UnsupportedLabelError(f"no probe for branch label {label!r}")


PROBE_LABELS = (
    "Case I", "Case II", "II.1.1", "II.1.2.1", "II.2.1", "II.2.2.1", "II.2.2.2",
    "III.1", "III.2.1.1", "III.2.2.1", "III.2.2.1.1", "III.2.2.1.2", "III.2.2.1.3",
    "III.2.2.2", "II*.2.2.1.1", "II*.2.2.1.2", "II*.2.2.2.1", "II*.2.2.2.2", "III*.2.2.2",
)


def branch_probe(label: str, seed: int = 0, attempts: int = 20) -> ElasticityTensor:
    """A seeded, randomly oriented tensor whose reconstruction passes through ``label``."""
    if label in CONTRADICTORY:
        raise UnsupportedLabelError(f"branch {label} is contradictory and cannot be reached")
    if label not in PROBE_LABELS:
        raise UnsupportedLabelError(f"unknown branch label {label!r}")
    for k in range(attempts):
        rng = np.random.default_rng([seed, k])
        a9, d1, d2 = _probe_parts(label, rng)
        lam, mu = rng.uniform(0.5, 2.0, size=2)
        local = compose(HarmonicParts(float(lam), float(mu), d1, d2, harm4(a9)))
        e = rotate_elast(random_rotation(seed * 1000 + k), local)
        try:
            trace = reconstruct(e).branch_trace
        except InconsistentBranchError:
            continue
        if label in trace:
            return e
    raise RuntimeError(f"no probe found for {label} after {attempts} attempts")
