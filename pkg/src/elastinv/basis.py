"""Invariant catalogs and orbit fingerprints.

Two catalogs live here:

* :func:`zheng_closure` enumerates every trace word of the eight classical
  types over the eleven intermediate tensors, plus the eleven scalars.
* :func:`catalog251` is the literal 251-entry polynomially irreducible
  functional basis, in its published row order.

Trace words are written ``"tr X Y^2 Z"`` with factor names from
``TENSOR_NAMES``; scalars are ``"λ"``, ``"μ"`` and ``"J2"`` .. ``"J10"``.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from .exceptions import ContractError
from .harmonic import HarmonicParts, decompose
from .intermediates import (
    SCALAR_DEGREES,
    SCALAR_NAMES,
    TENSOR_DEGREES,
    TENSOR_NAMES,
    compute_j,
    intermediate_tensors,
)
from .tensor import ElasticityTensor

CATALOG_VERSION = "table1-v1"
TABLE2_COUNTS = (2, 4, 10, 16, 29, 46, 54, 49, 29, 10, 2)
DUPLICATE_SUSPECT = "duplicate-suspect"

_ALIASES = {"lambda": "λ", "lam": "λ", "mu": "μ", "D(1)": "D1", "D(2)": "D2"}

# Published rows, degree 1..11, in reading order.
_TABLE1 = {
    1: "λ | μ",
    2: "J2 | tr D1^2 | tr D2^2 | tr D1 D2",
    3: "J3 | tr H | tr K | tr D1^3 | tr D2^3 | tr D1 F | tr D1 G | tr D2 G | tr D1^2 D2 | tr D1 D2^2",
    4: "J4 | tr F^2 | tr G^2 | tr D1 C | tr D1 H | tr D1 K | tr D1 M | tr D1 N | tr D2 C | tr D2 K"
       " | tr D2 M | tr D2 N | tr F G | tr D1^2 D2^2 | tr D1 D2 F | tr D1 D2 G",
    5: "J5 | tr B H | tr B K | tr B M | tr B N | tr F C | tr F H | tr F K | tr F M | tr F N"
       " | tr G C | tr G H | tr G K | tr G M | tr G N | tr D1^2 K | tr D1^2 M | tr D1^2 N"
       " | tr D2^2 H | tr D2^2 N | tr D1 F^2 | tr D1 G^2 | tr D2 F^2 | tr D2 G^2 | tr D1 D2 C"
       " | tr D1 D2 H | tr D1 D2 K | tr D1 D2 M | tr D1 D2 N",
    6: "J6 | tr H^2 | tr K^2 | tr M^2 | tr N^2 | tr F^3 | tr G^3 | tr D1 D | tr D2 D | tr C H"
       " | tr C K | tr C M | tr C N | tr H K | tr H M | tr H N | tr K M | tr K N | tr M N"
       " | tr F^2 G | tr B F^2 | tr B G^2 | tr F G^2 | tr D1^2 F^2 | tr D1^2 G^2 | tr D2^2 F^2"
       " | tr D2^2 G^2 | tr D1 B K | tr D1 B M | tr D1 B N | tr D1 F K | tr D1 F N | tr D1 G C"
       " | tr D1 G H | tr D1 G K | tr D1 G M | tr D1 G N | tr D2 B H | tr D2 B M | tr D2 B N"
       " | tr D2 F H | tr D2 F K | tr D2 F M | tr D2 F N | tr D2 G H | tr D2 G M",
    7: "J7 | tr F D | tr G D | tr D1^2 D | tr D2^2 D | tr F^2 C | tr F^2 H | tr F^2 K | tr F^2 M"
       " | tr F^2 N | tr G^2 C | tr G^2 H | tr G^2 K | tr G^2 M | tr G^2 N | tr D1 H^2 | tr D1 K^2"
       " | tr D1 M^2 | tr D1 N^2 | tr D2 H^2 | tr D2 K^2 | tr D2 M^2 | tr D2 N^2 | tr D1 D2 D"
       " | tr D1 C H | tr D1 C K | tr D1 C M | tr D1 C N | tr D1 H K | tr D1 H M | tr D1 H N"
       " | tr D1 K M | tr D1 K N | tr D1 M N | tr D2 C H | tr D2 C K | tr D2 C M | tr D2 C N"
       " | tr D2 H K | tr D2 H M | tr D2 H N | tr D2 K M | tr D2 K N | tr D2 M N | tr B F C"
       " | tr B F K | tr B F N | tr B G C | tr B G H | tr B G M | tr F G H | tr F G K | tr F G M"
       " | tr F G N",
    8: "J8 | tr H D | tr K D | tr M D | tr N D | tr B H^2 | tr B K^2 | tr B M^2 | tr B N^2"
       " | tr F C^2 | tr F H^2 | tr F K^2 | tr F M^2 | tr F N^2 | tr G C^2 | tr G H^2 | tr G K^2"
       " | tr G M^2 | tr G N^2 | tr B^2 F^2 | tr B^2 G^2 | tr F^2 G^2 | tr D1^2 H^2 | tr D1^2 K^2"
       " | tr D1^2 N^2 | tr D2^2 H^2 | tr D2^2 K^2 | tr D2^2 M^2 | tr D1 G D | tr D2 F D"
       " | tr B H K | tr B H M | tr B H N | tr B K M | tr B K N | tr B M N | tr F C K | tr F C N"
       " | tr F H K | tr F H N | tr F K M | tr F K N | tr F M N | tr G C H | tr G C M | tr G H K"
       " | tr G H M | tr G H N | tr G M N",
    9: "J9 | tr H^3 | tr K^3 | tr F^2 D | tr G^2 D | tr C^2 H | tr C^2 K | tr C^2 M | tr C^2 N"
       " | tr H^2 K | tr H^2 N | tr K^2 M | tr M^2 N | tr H K^2 | tr H N^2 | tr K M^2 | tr M N^2"
       " | tr D1 C D | tr D1 K D | tr D1 N D | tr D2 C D | tr D2 H D | tr D2 M D | tr F G D"
       " | tr C M N | tr H K M | tr H K N | tr H M N | tr K M N",
    10: "J10 | tr B^2 H^2 | tr B^2 K^2 | tr F^2 K^2 | tr B H K | tr B K D | tr F K D | tr F N D"
        " | tr G H D | tr G M D",
    11: "tr D1 D^2 | tr D2 D^2",
}


@dataclass(frozen=True)
class InvariantDescriptor:
    """One invariant: a trace word or a named scalar.

    ``degree`` is the polynomial degree in the components of E (sum of the
    factor degrees). ``table_degree`` is the row it is listed under in the
    published table; the two differ only for the duplicate-suspect entry.
    """

    name: str
    word: tuple
    degree: int
    table_degree: int = 0
    flags: frozenset = field(default_factory=frozenset)

    @property
    def is_scalar(self) -> bool:
        return self.word[0][0] in SCALAR_DEGREES

    def to_dict(self) -> dict:
        return {"name": self.name, "degree": self.degree, "table_degree": self.table_degree,
                "flags": sorted(self.flags)}


def parse_word(name: str) -> tuple:
    """``"tr D1^2 G"`` -> ``(("D1", 2), ("G", 1))``; ``"J5"`` -> ``(("J5", 1),)``."""
    tokens = name.split()
    if not tokens:
        raise ContractError("empty invariant name")
    if tokens[0] != "tr":
        if len(tokens) != 1:
            raise ContractError(f"cannot parse invariant {name!r}")
        scalar = _ALIASES.get(tokens[0], tokens[0])
        if scalar not in SCALAR_DEGREES:
            raise ContractError(f"unknown scalar invariant {name!r}")
        return ((scalar, 1),)
    word = []
    for tok in tokens[1:]:
        base, _, power = tok.partition("^")
        base = _ALIASES.get(base, base)
        if base not in TENSOR_DEGREES:
            raise ContractError(f"unknown tensor {base!r} in {name!r}")
        word.append((base, int(power) if power else 1))
    if not word or len(word) > 3 or sum(p for _, p in word) > 4:
        raise ContractError(f"unsupported trace word {name!r}")
    return tuple(word)


def word_degree(word) -> int:
    return sum(p * (SCALAR_DEGREES.get(f) or TENSOR_DEGREES[f]) for f, p in word)


def describe(name: str, table_degree: int = 0, flags=()) -> InvariantDescriptor:
    word = parse_word(name)
    canonical = word[0][0] if word[0][0] in SCALAR_DEGREES else _word_name(word)
    return InvariantDescriptor(canonical, word, word_degree(word), table_degree, frozenset(flags))


def _word_name(word) -> str:
    return "tr " + " ".join(f if p == 1 else f"{f}^{p}" for f, p in word)


@lru_cache(maxsize=None)
def _catalog() -> tuple:
    out = []
    for deg, row in _TABLE1.items():
        for name in row.split(" | "):
            d = describe(name.strip(), table_degree=deg)
            if d.degree != deg:
                d = InvariantDescriptor(d.name, d.word, d.degree, deg, frozenset({DUPLICATE_SUSPECT}))
            out.append(d)
    return tuple(out)


def catalog251() -> list:
    """The 251 published invariants in row order (degree-major)."""
    return list(_catalog())


def catalog_counts() -> dict:
    counts = {str(d): 0 for d in range(1, 12)}
    for d in _catalog():
        counts[str(d.table_degree)] += 1
    counts["total"] = len(_catalog())
    return counts


def find_descriptor(name: str) -> InvariantDescriptor:
    """Catalog entry by name; words not in the catalog get a fresh descriptor."""
    wanted = describe(name)
    for d in _catalog():
        if d.word == wanted.word:
            return d
    return wanted


# --------------------------------------------------------------------------
# evaluation
# --------------------------------------------------------------------------

def evaluate_word(word, tensors: dict, scalars: dict):
    """Evaluate a trace word (left-to-right products) or look up a scalar."""
    head = word[0][0]
    if head in SCALAR_DEGREES:
        return scalars[head]
    m = None
    for name, power in word:
        t = tensors[name]
        for _ in range(power):
            m = t if m is None else m @ t
    return m[0, 0] + m[1, 1] + m[2, 2]


def invariant_inputs(parts: HarmonicParts):
    """Tensors and scalars (name -> value) feeding every catalog entry."""
    tensors = intermediate_tensors(parts.a, parts.d1, parts.d2)
    j = compute_j(parts.a)
    scalars = {"λ": parts.lam, "μ": parts.mu,
               **{f"J{d}": getattr(j, f"j{d}") for d in range(2, 11)}}
    return tensors, scalars


def evaluate_catalog(parts: HarmonicParts, catalog=None) -> list:
    catalog = _catalog() if catalog is None else catalog
    tensors, scalars = invariant_inputs(parts)
    return [evaluate_word(d.word, tensors, scalars) for d in catalog]


@dataclass(frozen=True, eq=False)
class Fingerprint:
    """Values of the 251 catalog invariants plus the source tensor norm."""

    values: np.ndarray
    norm: float
    catalog_version: str = CATALOG_VERSION

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.shape != (len(_catalog()),):
            raise ContractError(f"a fingerprint has {len(_catalog())} values, got {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def degrees(self) -> np.ndarray:
        return np.array([d.degree for d in _catalog()])

    def __len__(self):
        return len(self.values)

    def to_dict(self) -> dict:
        return {"norm": float(self.norm), "values": [float(x) for x in self.values],
                "catalog_version": self.catalog_version}

    @classmethod
    def from_dict(cls, data: dict) -> "Fingerprint":
        if data.get("catalog_version", CATALOG_VERSION) != CATALOG_VERSION:
            raise ContractError(f"unsupported catalog version {data['catalog_version']!r}")
        return cls(data["values"], data["norm"])


def fingerprint_parts(parts: HarmonicParts, norm: float) -> Fingerprint:
    return Fingerprint(np.array(evaluate_catalog(parts), dtype=float), norm)


def evaluate_fingerprint(e: ElasticityTensor) -> Fingerprint:
    return fingerprint_parts(decompose(e), e.norm)


# --------------------------------------------------------------------------
# classical closure over the intermediate tensors
# --------------------------------------------------------------------------

def _closure_words(names):
    words = []
    for a in names:
        words += [((a, 1),), ((a, 2),), ((a, 3),)]
    for a, b in combinations(names, 2):
        words += [((a, 1), (b, 1)), ((a, 2), (b, 1)), ((a, 1), (b, 2)), ((a, 2), (b, 2))]
    for a, b, c in combinations(names, 3):
        words.append(((a, 1), (b, 1), (c, 1)))
    return words


def zheng_closure(tensors, scalars) -> list:
    """Every trace word of the eight classical types, plus the scalars.

    ``tensors`` are the eleven intermediate tensors in ``TENSOR_NAMES`` order,
    ``scalars`` the eleven scalars in ``SCALAR_NAMES`` order. Returns
    ``(descriptor, value)`` pairs: 418 trace words followed by 11 scalars.
    """
    tensors, scalars = list(tensors), list(scalars)
    if len(tensors) != len(TENSOR_NAMES) or len(scalars) != len(SCALAR_NAMES):
        raise ContractError(f"expected {len(TENSOR_NAMES)} tensors and {len(SCALAR_NAMES)} "
                            f"scalars, got {len(tensors)} and {len(scalars)}")
    tmap = dict(zip(TENSOR_NAMES, tensors))
    smap = dict(zip(SCALAR_NAMES, scalars))
    out = []
    for word in _closure_words(TENSOR_NAMES):
        d = InvariantDescriptor(_word_name(word), word, word_degree(word), word_degree(word))
        out.append((d, evaluate_word(word, tmap, smap)))
    for name in SCALAR_NAMES:
        d = InvariantDescriptor(name, ((name, 1),), SCALAR_DEGREES[name], SCALAR_DEGREES[name])
        out.append((d, smap[name]))
    return out
