"""Logical relations over the flat booleans and brute-force invariance.

A basic relation of arity n is parameterized by index sets A subset-of B:
a tuple belongs to it when some A-coordinate is undefined or all
B-coordinates agree.  Finite intersections of these are the composite
relations used for the sharper separation arguments.

Invariance of a k-ary function under an n-ary relation means: pick any k
member tuples, stack them as rows, apply the function to each of the n
columns; the resulting row must again be a member.  The checker here
enumerates all |R|^k row selections (vectorized, chunked) and returns
the first counterexample in lexicographic order of the base-3 tuple
encoding, which makes witnesses deterministic across runs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .config import DEFAULT_CONFIG, SearchConfig
from .errors import (
    ArityMismatchError,
    BudgetExceededError,
    FormatError,
    SoundnessError,
)
from .functions import MonotoneFn, table_of
from .lattice import BOT, Tri, TriTuple


@dataclass(frozen=True)
class PreseqRel:
    """Basic relation S^n_{A,B}: some A-coordinate undefined, or all
    B-coordinates equal."""

    n: int
    a: frozenset[int]
    b: frozenset[int]

    def __post_init__(self):
        if self.n < 1:
            raise ArityMismatchError("relation arity must be >= 1")
        if not self.a <= self.b:
            raise FormatError(f"A must be a subset of B: {set(self.a)} vs {set(self.b)}")
        if not self.b <= set(range(1, self.n + 1)):
            raise FormatError(f"B must fit in 1..{self.n}: {set(self.b)}")

    def member(self, d: TriTuple) -> bool:
        if d.arity != self.n:
            raise ArityMismatchError(f"tuple arity {d.arity}, relation arity {self.n}")
        if any(d.entries[i - 1] == BOT for i in self.a):
            return True
        vals = {d.entries[i - 1] for i in self.b}
        return len(vals) <= 1

    def describe(self) -> str:
        return (
            f"preseq n={self.n}"
            f" A={','.join(map(str, sorted(self.a)))}"
            f" B={','.join(map(str, sorted(self.b)))}"
        )

    def __str__(self) -> str:
        return self.describe()


@dataclass(frozen=True)
class SeqRel:
    """Finite intersection of basic relations of one arity."""

    conjuncts: tuple[PreseqRel, ...]

    def __post_init__(self):
        if not self.conjuncts:
            raise FormatError("composite relation needs at least one conjunct")
        n = self.conjuncts[0].n
        if any(c.n != n for c in self.conjuncts):
            raise ArityMismatchError("conjuncts must share one arity")

    @property
    def n(self) -> int:
        return self.conjuncts[0].n

    def member(self, d: TriTuple) -> bool:
        return all(c.member(d) for c in self.conjuncts)

    def describe(self) -> str:
        parts = " ".join(
            "{A=%s B=%s}"
            % (",".join(map(str, sorted(c.a))), ",".join(map(str, sorted(c.b))))
            for c in self.conjuncts
        )
        return f"seqrel n={self.n} {parts}"

    def __str__(self) -> str:
        return self.describe()


Relation = PreseqRel | SeqRel


def canonical_equal(m: int) -> PreseqRel:
    """S^m with A = B = {1..m}; invariance threshold for the first
    level coordinate."""
    idx = frozenset(range(1, m + 1))
    return PreseqRel(max(m, 1), idx, idx)


def canonical_strict(m: int) -> PreseqRel:
    """S^{m+1} with A = {1..m} strictly inside B = {1..m+1}; invariance
    threshold for the second level coordinate."""
    return PreseqRel(m + 1, frozenset(range(1, m + 1)), frozenset(range(1, m + 2)))


def canonicalize(rel: PreseqRel) -> PreseqRel:
    """Collapse a basic relation to its invariance-equivalent canonical
    form: only |A| and whether A = B matter.  The degenerate A = B = {}
    relation maps to the universal arity-1 relation."""
    size = len(rel.a)
    if rel.a == rel.b:
        if size == 0:
            return PreseqRel(1, frozenset(), frozenset())
        return canonical_equal(size)
    return canonical_strict(size)


def chain_relation(j: int) -> SeqRel:
    """Arity-j intersection of the equal-family prefixes {1..m} for
    m = 2..j; sees strictly more than any basic relation alone."""
    if j < 2:
        raise FormatError("chain relations need arity >= 2")
    return SeqRel(
        tuple(
            PreseqRel(j, frozenset(range(1, m + 1)), frozenset(range(1, m + 1)))
            for m in range(2, j + 1)
        )
    )


# ---------------------------------------------------------------------------
# Brute-force invariance
# ---------------------------------------------------------------------------

_member_cache: dict[Relation, np.ndarray] = {}


def member_matrix(rel: Relation) -> np.ndarray:
    """Member tuples as an (m, n) int8 array, sorted by base-3 code."""
    cached = _member_cache.get(rel)
    if cached is not None:
        return cached
    n = rel.n
    rows = []
    for code in range(3**n):
        t = TriTuple.decode(code, n)
        if rel.member(t):
            rows.append(t.entries)
    mat = np.array(rows, dtype=np.int8).reshape(len(rows), n)
    _member_cache[rel] = mat
    return mat


def _membership_mask(rel: Relation, y: np.ndarray) -> np.ndarray:
    """Vectorized membership of rows of y (shape (c, n))."""
    if isinstance(rel, SeqRel):
        mask = _membership_mask(rel.conjuncts[0], y)
        for c in rel.conjuncts[1:]:
            mask &= _membership_mask(c, y)
        return mask
    a_idx = [i - 1 for i in sorted(rel.a)]
    b_idx = [i - 1 for i in sorted(rel.b)]
    if a_idx:
        bot_a = (y[:, a_idx] == 0).any(axis=1)
    else:
        bot_a = np.zeros(len(y), dtype=bool)
    if len(b_idx) <= 1:
        eq_b = np.ones(len(y), dtype=bool)
    else:
        first = y[:, b_idx[0]:b_idx[0] + 1]
        eq_b = (y[:, b_idx] == first).all(axis=1)
    return bot_a | eq_b


@dataclass(frozen=True)
class InvarianceWitness:
    """A replayable counterexample: k member rows whose columnwise image
    under the function leaves the relation."""

    relation: Relation
    inputs: tuple[TriTuple, ...]
    output: TriTuple

    def verify(self, fn: MonotoneFn) -> bool:
        if len(self.inputs) != fn.arity:
            return False
        n = self.relation.n
        if any(t.arity != n for t in self.inputs) or self.output.arity != n:
            return False
        if not all(self.relation.member(t) for t in self.inputs):
            return False
        cols = [
            TriTuple(tuple(t.entries[c] for t in self.inputs)) for c in range(n)
        ]
        computed = TriTuple(tuple(fn.eval(col) for col in cols))
        return computed == self.output and not self.relation.member(self.output)


def invariance_counterexample(
    fn: MonotoneFn, rel: Relation, config: SearchConfig = DEFAULT_CONFIG
) -> InvarianceWitness | None:
    """Exhaustive search over all |R|^k row selections; None means
    invariant.  Raises BudgetExceededError before touching a search
    whose state count is above the budget."""
    mem = member_matrix(rel)
    m = len(mem)
    k = fn.arity
    n = rel.n
    if m == 0:
        return None
    required = m**k
    if required > config.budget:
        raise BudgetExceededError(required, config.budget, what="invariance check")
    tbl = np.asarray(table_of(fn), dtype=np.int8)
    mem32 = mem.astype(np.int32)
    weights = [m ** (k - 1 - slot) for slot in range(k)]
    for start in range(0, required, config.chunk):
        stop = min(start + config.chunk, required)
        sel = np.arange(start, stop, dtype=np.int64)
        codes = np.zeros((stop - start, n), dtype=np.int32)
        for slot in range(k):
            digit = (sel // weights[slot]) % m
            codes = codes * 3 + mem32[digit]
        y = tbl[codes]
        ok = _membership_mask(rel, y)
        bad = np.flatnonzero(~ok)
        if bad.size:
            first = int(sel[bad[0]])
            picks = [(first // weights[slot]) % m for slot in range(k)]
            inputs = tuple(
                TriTuple(tuple(Tri(int(v)) for v in mem[i])) for i in picks
            )
            output = TriTuple(tuple(Tri(int(v)) for v in y[bad[0]]))
            return InvarianceWitness(rel, inputs, output)
    return None


def is_invariant(
    fn: MonotoneFn, rel: Relation, config: SearchConfig = DEFAULT_CONFIG
) -> bool:
    return invariance_counterexample(fn, rel, config) is None


# ---------------------------------------------------------------------------
# Separating-relation search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Separation:
    """Evidence that `left` is not definable from `right`: a relation
    the right function respects and the left function provably breaks.

    The witness side is always verified by replay.  The invariant side
    is verified by full enumeration when it fits the budget; otherwise
    it rests on the level characterization, and `invariant_method`
    records which route was taken.
    """

    relation: Relation
    witness: InvarianceWitness
    invariant_method: str  # "brute" | "level"
    invariant_states: int


@dataclass(frozen=True)
class SeparationOutcome:
    found: Separation | None
    skipped: tuple[str, ...]


def _columns_to_witness_rows(
    fn: MonotoneFn, columns: Sequence[TriTuple], rel: Relation
) -> InvarianceWitness:
    n = len(columns)
    rows = tuple(
        TriTuple(tuple(col.entries[r] for col in columns)) for r in range(fn.arity)
    )
    out = TriTuple(tuple(fn.eval(col) for col in columns))
    assert all(t.arity == n for t in rows)
    return InvarianceWitness(rel, rows, out)


def constructed_witness(
    fn: MonotoneFn, rel: PreseqRel, config: SearchConfig = DEFAULT_CONFIG
) -> InvarianceWitness | None:
    """Build a counterexample for a canonical relation directly from a
    minimal coherent (or coherent bivalued) trace subset, then replay it.

    Equal-family relation of arity m: the columns are a bivalued
    coherent subset, padded by repeating the first column.  Strict
    family S^{m+1}_{m,m+1}: the columns are a coherent subset padded
    likewise, plus one final column holding the pointwise meet (the
    function is undefined there, breaking the all-equal clause).
    """
    from .plevels import min_coherent_subset  # local: avoids an import cycle

    size_a, size_b = len(rel.a), len(rel.b)
    if rel.a != frozenset(range(1, size_a + 1)):
        return None
    if rel.a == rel.b:
        want_bivalued, pad_to, add_meet = True, rel.n, False
        if size_a != rel.n:
            return None
    elif size_b == size_a + 1 and rel.b == frozenset(range(1, size_b + 1)) and rel.n == size_b:
        want_bivalued, pad_to, add_meet = False, rel.n - 1, True
    else:
        return None

    subset = min_coherent_subset(fn, bivalued=want_bivalued, config=config)
    if subset is None or len(subset) > pad_to:
        return None
    columns = list(subset)
    while len(columns) < pad_to:
        columns.append(columns[0])
    if add_meet:
        meet = columns[0]
        for col in columns[1:]:
            meet = meet.meet(col)
        columns.append(meet)
    witness = _columns_to_witness_rows(fn, columns, rel)
    return witness if witness.verify(fn) else None


def find_separating_relation(
    left: MonotoneFn,
    right: MonotoneFn,
    config: SearchConfig = DEFAULT_CONFIG,
    extra_relations: Iterable[Relation] = (),
) -> SeparationOutcome:
    """Look for a relation certifying left-not-definable-from-right.

    Tried in order: canonical relations predicted to separate by the
    level comparison; composite chain relations up to the configured
    arity; then any user-supplied relations.  A None outcome only means
    "no separator found within bounds" and never implies definability.
    """
    from .plevels import p_level, predict_invariant  # local: import cycle

    skipped: list[str] = []
    pl = p_level(left, config)
    pr = p_level(right, config)

    candidates: list[PreseqRel] = []
    if pl.i < pr.i:
        candidates.append(canonical_equal(int(pl.i) + 1))
    if pl.j < pr.j:
        candidates.append(canonical_strict(int(pl.j) + 1))

    for rel in candidates:
        witness = constructed_witness(left, rel, config)
        if witness is None:
            try:
                found = invariance_counterexample(left, rel, config)
            except BudgetExceededError as exc:
                skipped.append(f"{rel}: witness search skipped ({exc})")
                continue
            if found is None:
                raise SoundnessError(
                    f"{left.label} predicted non-invariant under {rel} "
                    "but no counterexample exists"
                )
            witness = found
        states = len(member_matrix(rel)) ** right.arity
        if states <= config.budget:
            if not is_invariant(right, rel, config):
                raise SoundnessError(
                    f"{right.label} predicted invariant under {rel} "
                    "but a counterexample exists"
                )
            method = "brute"
        else:
            if not predict_invariant(pr, rel):
                continue
            skipped.append(
                f"{rel}: invariant side needs {states} states "
                f"(budget {config.budget}), justified by level instead"
            )
            method = "level"
        return SeparationOutcome(
            Separation(rel, witness, method, states), tuple(skipped)
        )

    chain_pool: list[Relation] = [
        chain_relation(j) for j in range(2, config.max_rel_arity + 1)
    ]
    for rel in chain_pool + list(extra_relations):
        try:
            right_side = invariance_counterexample(right, rel, config)
            if right_side is not None:
                continue
            witness = invariance_counterexample(left, rel, config)
        except BudgetExceededError as exc:
            skipped.append(f"{rel}: skipped ({exc})")
            continue
        if witness is not None:
            states = len(member_matrix(rel)) ** right.arity
            return SeparationOutcome(
                Separation(rel, witness, "brute", states), tuple(skipped)
            )
    return SeparationOutcome(None, tuple(skipped))


# ---------------------------------------------------------------------------
# Relation file format:
#   preseq n=4 A=1,2 B=1,2,3          (A= allowed for the empty set)
#   seqrel n=3 {A=1,2 B=1,2} {A=1,2,3 B=1,2,3}
# ---------------------------------------------------------------------------

_IDX_RE = re.compile(r"^(preseq|seqrel)\s+n=(\d+)\s*(.*)$")
_PAIR_RE = re.compile(r"\{\s*A=([\d,]*)\s+B=([\d,]*)\s*\}")


def _parse_indices(text: str, lineno: int | None) -> frozenset[int]:
    text = text.strip()
    if not text:
        return frozenset()
    try:
        return frozenset(int(p) for p in text.split(","))
    except ValueError:
        raise FormatError(f"bad index list {text!r}", lineno)


def parse_relation(line: str, lineno: int | None = None) -> Relation:
    m = _IDX_RE.match(line.strip())
    if not m:
        raise FormatError(f"bad relation line {line!r}", lineno)
    kind, n_text, rest = m.groups()
    n = int(n_text)
    if n < 1:
        raise FormatError("relation arity must be >= 1 in files", lineno)
    if kind == "preseq":
        parts = rest.split()
        if len(parts) != 2 or not parts[0].startswith("A=") or not parts[1].startswith("B="):
            raise FormatError(f"bad relation line {line!r}", lineno)
        a = _parse_indices(parts[0][2:], lineno)
        b = _parse_indices(parts[1][2:], lineno)
        try:
            return PreseqRel(n, a, b)
        except (FormatError, ArityMismatchError) as exc:
            raise FormatError(str(exc), lineno) from None
    pairs = _PAIR_RE.findall(rest)
    if not pairs or _PAIR_RE.sub("", rest).strip():
        raise FormatError(f"bad relation line {line!r}", lineno)
    conjuncts = []
    for a_text, b_text in pairs:
        try:
            conjuncts.append(
                PreseqRel(n, _parse_indices(a_text, lineno), _parse_indices(b_text, lineno))
            )
        except (FormatError, ArityMismatchError) as exc:
            raise FormatError(str(exc), lineno) from None
    return SeqRel(tuple(conjuncts))


def parse_relation_file(text: str) -> list[Relation]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        out.append(parse_relation(line, lineno))
    return out


def format_relation(rel: Relation) -> str:
    return rel.describe()
