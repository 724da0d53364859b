"""Coherence coefficients, invariance levels, and classification.

The level of a function is the pair (threshold for equal-index
relations, threshold for strict-index relations); both are read off the
trace: one less than the size of the smallest coherent bivalued subset,
and one less than the size of the smallest non-singleton coherent
subset, with infinity when no such subset exists.  The pair determines
exactly which basic relations the function respects, which is what the
prediction and classification routines exploit.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterator

from .config import DEFAULT_CONFIG, SearchConfig
from .errors import BoundExceededError
from .functions import (
    MonotoneFn,
    TraceEntry,
    _check_monotone_codes,
    is_bivalued,
    is_monovalued,
    trace_from_table,
)
from .lattice import TriTuple
from .relations import PreseqRel


@functools.total_ordering
class ExtNat:
    """A natural number extended with a top element for 'no such subset'."""

    __slots__ = ("finite",)

    INF: "ExtNat"

    def __init__(self, value: int | None):
        if value is not None and value < 0:
            raise ValueError("extended naturals are nonnegative")
        object.__setattr__(self, "finite", value)

    @property
    def is_infinite(self) -> bool:
        return self.finite is None

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = ExtNat(other)
        if not isinstance(other, ExtNat):
            return NotImplemented
        return self.finite == other.finite

    def __lt__(self, other) -> bool:
        if isinstance(other, int):
            other = ExtNat(other)
        if not isinstance(other, ExtNat):
            return NotImplemented
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self.finite < other.finite

    def __hash__(self) -> int:
        return hash(("ExtNat", self.finite))

    def __add__(self, k: int) -> "ExtNat":
        return self if self.is_infinite else ExtNat(self.finite + k)

    def __sub__(self, k: int) -> "ExtNat":
        return self if self.is_infinite else ExtNat(self.finite - k)

    def __int__(self) -> int:
        if self.is_infinite:
            raise ValueError("infinite")
        return self.finite

    def __str__(self) -> str:
        return "inf" if self.is_infinite else str(self.finite)

    def __repr__(self) -> str:
        return f"ExtNat({self.finite!r})"

    def to_json(self) -> int | str:
        return "inf" if self.is_infinite else self.finite


ExtNat.INF = ExtNat(None)
INF = ExtNat.INF


def ext_min(a: ExtNat, b: ExtNat) -> ExtNat:
    return a if a <= b else b


@dataclass(frozen=True)
class PLevel:
    """Invariance-level pair; first coordinate governs equal-index
    relations, second the strict-index ones."""

    i: ExtNat
    j: ExtNat

    def __post_init__(self):
        if self.i < 2 or self.j < 1:
            raise ValueError(f"levels start at (2, 1); got ({self.i}, {self.j})")
        if self.i < self.j:
            raise ValueError(f"first coordinate below second: ({self.i}, {self.j})")

    def to_json(self) -> list:
        return [self.i.to_json(), self.j.to_json()]

    def __str__(self) -> str:
        return f"({self.i}, {self.j})"


# ---------------------------------------------------------------------------
# Coherence coefficients
# ---------------------------------------------------------------------------

def min_coherent_subset(
    fn: MonotoneFn, bivalued: bool, config: SearchConfig = DEFAULT_CONFIG
) -> tuple[TriTuple, ...] | None:
    """Smallest coherent subset of the trace inputs (bivalued on demand),
    searched in increasing size so the first hit is minimal.  None when
    no qualifying subset exists.
    """
    m = fn.trace_size
    if m > config.coherence_bound:
        raise BoundExceededError(
            f"trace size {m} above coherence bound {config.coherence_bound}"
        )
    entries = fn.entries
    k = fn.arity
    start = 3 if bivalued else 2
    for size in range(start, m + 1):
        for combo in itertools.combinations(range(m), size):
            if bivalued and len({entries[i].output for i in combo}) != 2:
                continue
            if _combo_coherent(entries, combo, k):
                return tuple(entries[i].input for i in combo)
    return None


def _combo_coherent(entries: tuple[TraceEntry, ...], combo: tuple[int, ...], k: int) -> bool:
    # a later undefined entry excuses an earlier disagreement, so scan
    # the whole column before giving up on it
    for c in range(k):
        has_bot = False
        first = -1
        differs = False
        for i in combo:
            v = entries[i].input.entries[c]
            if v == 0:
                has_bot = True
                break
            if first < 0:
                first = v
            elif v != first:
                differs = True
        if differs and not has_bot:
            return False
    return True


def cc(fn: MonotoneFn, config: SearchConfig = DEFAULT_CONFIG) -> ExtNat:
    """Size of the smallest non-singleton coherent trace subset."""
    subset = min_coherent_subset(fn, bivalued=False, config=config)
    return INF if subset is None else ExtNat(len(subset))


def bcc(fn: MonotoneFn, config: SearchConfig = DEFAULT_CONFIG) -> ExtNat:
    """Size of the smallest coherent bivalued trace subset (>= 3)."""
    subset = min_coherent_subset(fn, bivalued=True, config=config)
    return INF if subset is None else ExtNat(len(subset))


def p_level(fn: MonotoneFn, config: SearchConfig = DEFAULT_CONFIG) -> PLevel:
    return PLevel(bcc(fn, config) - 1, cc(fn, config) - 1)


def predict_invariant(level: PLevel, rel: PreseqRel) -> bool:
    """Invariance criterion for a basic relation, read off the level:
    |A| = |B| at most the first coordinate, or |A| < |B| with |A| at
    most the second."""
    size_a, size_b = len(rel.a), len(rel.b)
    if size_a == size_b:
        return ExtNat(size_a) <= level.i
    return ExtNat(size_a) <= level.j


def p_level_of_sum(pf: PLevel, pg: PLevel) -> PLevel:
    """The join construction meets levels componentwise."""
    return PLevel(ext_min(pf.i, pg.i), ext_min(pf.j, pg.j))


def inexpressible_by_plevel(
    left: MonotoneFn, right: MonotoneFn, config: SearchConfig = DEFAULT_CONFIG
) -> frozenset[str]:
    """Level-comparison fast path.  Returns any of
    'left_not_below_right' / 'right_not_below_left'.

    A higher level means invariance under more relations, i.e. a weaker
    function: when the left level exceeds the right one in some
    coordinate, the left function respects a relation the right one
    breaks, so the right one cannot be defined from it."""
    pl = p_level(left, config)
    pr = p_level(right, config)
    claims = set()
    if pl.i > pr.i or pl.j > pr.j:
        claims.add("right_not_below_left")
    if pr.i > pl.i or pr.j > pl.j:
        claims.add("left_not_below_right")
    return frozenset(claims)


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

_CLASS_ORDER = (
    "sequential",
    "stable",
    "unstable",
    "monovalued",
    "bivalued",
    "stable_dominating",
    "subsequential",
)


@dataclass(frozen=True)
class ClassReport:
    name: str
    arity: int
    trace_size: int
    cc: ExtNat
    bcc: ExtNat
    plevel: PLevel
    sequential: bool
    stable: bool
    unstable: bool
    monovalued: bool
    bivalued: bool
    stable_dominating: bool
    subsequential: bool
    degree_alias: str  # "BP" | "DET" | "none"

    @property
    def classes(self) -> tuple[str, ...]:
        return tuple(c for c in _CLASS_ORDER if getattr(self, c))

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "arity": self.arity,
            "trace_size": self.trace_size,
            "cc": self.cc.to_json(),
            "bcc": self.bcc.to_json(),
            "plevel": self.plevel.to_json(),
            "classes": list(self.classes),
            "degree_alias": self.degree_alias,
        }


def classify(fn: MonotoneFn, config: SearchConfig = DEFAULT_CONFIG) -> ClassReport:
    """Everything here is read off (cc, bcc) and the trace outputs; no
    relation searches are run.  Sequential means no coherent subset at
    all; stable means no coherent pair; the two complete-degree aliases
    are the (2,2) and (inf,1) levels.  The (2,1) level is reported as
    stable_dominating only, without an alias."""
    c = cc(fn, config)
    b = bcc(fn, config)
    level = PLevel(b - 1, c - 1)
    sequential = c.is_infinite
    stable = c >= 3
    if level == PLevel(ExtNat(2), ExtNat(2)):
        alias = "BP"
    elif level == PLevel(INF, ExtNat(1)):
        alias = "DET"
    else:
        alias = "none"
    return ClassReport(
        name=fn.label,
        arity=fn.arity,
        trace_size=fn.trace_size,
        cc=c,
        bcc=b,
        plevel=level,
        sequential=sequential,
        stable=stable,
        unstable=not stable,
        monovalued=is_monovalued(fn),
        bivalued=is_bivalued(fn),
        stable_dominating=level == PLevel(ExtNat(2), ExtNat(1)),
        subsequential=b.is_infinite,
        degree_alias=alias,
    )


# ---------------------------------------------------------------------------
# Exhaustive enumeration (oracle support)
# ---------------------------------------------------------------------------

def enumerate_monotone(
    arity: int, config: SearchConfig = DEFAULT_CONFIG
) -> Iterator[MonotoneFn]:
    """Every monotone total function of the given arity, exactly once,
    as traces, in table-lexicographic order."""
    if arity > config.enumeration_bound:
        raise BoundExceededError(
            f"arity {arity} above enumeration bound {config.enumeration_bound}"
        )
    size = 3**arity
    for vals in itertools.product((0, 1, 2), repeat=size):
        if _check_monotone_codes(arity, vals) is None:
            yield trace_from_table(arity, vals)
