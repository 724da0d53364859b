"""Positive definability evidence and the combined comparison engine.

The positive route is the trace-mapping sufficient condition: a total
map between traces under which every non-singleton coherent subset of
source inputs keeps a non-singleton coherent image, and output-distinct
entries inside such subsets keep distinct outputs.  Passing the check
proves the source definable from the target; failing to find a mapping
proves nothing (the condition is sufficient, not necessary), which the
engine is careful never to forget.

Negative evidence comes from separating relations (see relations module)
or the level comparison.  The verdict combiner keeps "unknown" as a
first-class outcome and records which budgets were exhausted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import DEFAULT_CONFIG, SearchConfig
from .errors import (
    BoundExceededError,
    BudgetExceededError,
    InapplicableError,
    SoundnessError,
)
from .functions import MonotoneFn, is_stable
from .lattice import TT
from .plevels import INF, cc
from .relations import (
    Relation,
    Separation,
    find_separating_relation,
    format_relation,
)


@dataclass(frozen=True)
class BMMapping:
    """A total map from source trace entries to target trace entries,
    stored as target indices aligned with the source entry order."""

    source: MonotoneFn
    target: MonotoneFn
    assignment: tuple[int, ...]

    def __post_init__(self):
        if len(self.assignment) != self.source.trace_size:
            raise InapplicableError("assignment must cover the whole source trace")
        if any(not 0 <= t < self.target.trace_size for t in self.assignment):
            raise InapplicableError("assignment index out of range")

    def entry_map(self) -> dict:
        return {
            self.source.entries[s]: self.target.entries[t]
            for s, t in enumerate(self.assignment)
        }

    def rows(self) -> list[list[str]]:
        return [
            [str(self.source.entries[s]), str(self.target.entries[t])]
            for s, t in enumerate(self.assignment)
        ]


def _coord_masks(fn: MonotoneFn) -> tuple[list[int], list[int], list[int]]:
    """Per-coordinate bitmasks over trace entries: undefined / true / false."""
    bot = [0] * fn.arity
    tt = [0] * fn.arity
    ff = [0] * fn.arity
    for idx, e in enumerate(fn.entries):
        bit = 1 << idx
        for c, v in enumerate(e.input.entries):
            if v == 0:
                bot[c] |= bit
            elif v == 1:
                tt[c] |= bit
            else:
                ff[c] |= bit
    return bot, tt, ff


def _mask_coherent(mask: int, bot: list[int], tt: list[int], ff: list[int]) -> bool:
    for c in range(len(bot)):
        if mask & bot[c]:
            continue
        if (mask & tt[c]) and (mask & ff[c]):
            return False
    return True


def check_bm(mapping: BMMapping, config: SearchConfig = DEFAULT_CONFIG) -> bool:
    """Exact check over ALL source subsets (coherence is not closed
    under subsets, so minimal subsets alone would not do)."""
    src = mapping.source
    m = src.trace_size
    if m > config.mapping_bound:
        raise BoundExceededError(
            f"source trace size {m} above mapping bound {config.mapping_bound}"
        )
    sbot, stt, sff = _coord_masks(src)
    tbot, ttt, tff = _coord_masks(mapping.target)
    out_tt_mask = 0
    for idx, e in enumerate(src.entries):
        if e.output == TT:
            out_tt_mask |= 1 << idx
    target_out = [int(e.output) for e in mapping.target.entries]

    for mask in range(1, 1 << m):
        if mask.bit_count() < 2:
            continue
        if not _mask_coherent(mask, sbot, stt, sff):
            continue
        image = 0
        bits = mask
        while bits:
            low = bits & -bits
            image |= 1 << mapping.assignment[low.bit_length() - 1]
            bits ^= low
        if image.bit_count() < 2:
            return False
        if not _mask_coherent(image, tbot, ttt, tff):
            return False
        tt_part = mask & out_tt_mask
        ff_part = mask & ~out_tt_mask
        if tt_part and ff_part:
            outs_tt = {
                target_out[mapping.assignment[i]]
                for i in _bit_indices(tt_part)
            }
            outs_ff = {
                target_out[mapping.assignment[i]]
                for i in _bit_indices(ff_part)
            }
            if outs_tt & outs_ff:
                return False
    return True


def _bit_indices(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bm_search(
    f: MonotoneFn, g: MonotoneFn, config: SearchConfig = DEFAULT_CONFIG
) -> BMMapping | None:
    """Depth-first search for a valid trace mapping f -> g, assigning
    target indices in ascending order with forward checking restricted
    to already-assigned entries; the first hit is returned after a full
    re-verification.  None means no mapping exists (within the exact,
    exhaustive search) -- which licenses NO negative conclusion."""
    m = f.trace_size
    if m > config.mapping_bound:
        raise BoundExceededError(
            f"source trace size {m} above mapping bound {config.mapping_bound}"
        )
    raw = g.trace_size**m
    if raw > config.budget:
        raise BudgetExceededError(raw, config.budget, what="mapping search")

    sbot, stt, sff = _coord_masks(f)
    tbot, ttt, tff = _coord_masks(g)
    src_out = [int(e.output) for e in f.entries]
    tgt_out = [int(e.output) for e in g.entries]

    # coherent source subsets grouped by their highest entry index
    by_max: list[list[int]] = [[] for _ in range(m)]
    for mask in range(1, 1 << m):
        if mask.bit_count() >= 2 and _mask_coherent(mask, sbot, stt, sff):
            by_max[mask.bit_length() - 1].append(mask)

    assignment: list[int] = []

    def consistent(depth: int) -> bool:
        for mask in by_max[depth]:
            image = 0
            outs_tt = 0
            outs_ff = 0
            for i in _bit_indices(mask):
                t = assignment[i]
                image |= 1 << t
                if src_out[i] == 1:
                    outs_tt |= 1 << tgt_out[t]
                else:
                    outs_ff |= 1 << tgt_out[t]
            if image.bit_count() < 2:
                return False
            if not _mask_coherent(image, tbot, ttt, tff):
                return False
            if outs_tt and outs_ff and (outs_tt & outs_ff):
                return False
        return True

    def dfs(depth: int) -> bool:
        if depth == m:
            return True
        for t in range(g.trace_size):
            assignment.append(t)
            if consistent(depth) and dfs(depth + 1):
                return True
            assignment.pop()
        return False

    if not dfs(0):
        return None
    mapping = BMMapping(f, g, tuple(assignment))
    if not check_bm(mapping, config):
        raise SoundnessError("search produced a mapping that fails the full check")
    return mapping


def cofinal_witness(
    fn: MonotoneFn, config: SearchConfig = DEFAULT_CONFIG
) -> tuple[int, BMMapping]:
    """For a stable non-sequential function, the cyclic monovalued
    function indexed by the coherence coefficient maps onto a minimal
    coherent trace subset; returns that index and the verified mapping."""
    from .zoo import gustave

    if not is_stable(fn):
        raise InapplicableError("construction applies to stable functions only")
    c = cc(fn, config)
    if c == INF:
        raise InapplicableError("function is sequential; nothing to witness")
    from .plevels import min_coherent_subset

    subset = min_coherent_subset(fn, bivalued=False, config=config)
    assert subset is not None
    index = len(subset)
    source = gustave(index)
    subset_idx = [
        next(i for i, e in enumerate(fn.entries) if e.input == t) for t in subset
    ]
    assignment = tuple(
        subset_idx[s % len(subset_idx)] for s in range(source.trace_size)
    )
    mapping = BMMapping(source, fn, assignment)
    if not check_bm(mapping, config):
        raise SoundnessError("cofinal mapping failed verification")
    return index, mapping


# ---------------------------------------------------------------------------
# Certificates and the comparison engine
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    kind: str  # "bm_mapping" | "separation" | "term_chain"
    source: MonotoneFn
    target: MonotoneFn
    payload: dict
    verified: bool = True

    def claim(self) -> str:
        if self.kind == "separation":
            return f"{self.source.label} is not definable from {self.target.label}"
        return f"{self.source.label} is definable from {self.target.label}"

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "source": _fn_json(self.source),
            "target": _fn_json(self.target),
            "payload": self.payload,
            "verified": self.verified,
        }


def _fn_json(fn: MonotoneFn) -> dict:
    return {
        "name": fn.name,
        "arity": fn.arity,
        "trace": [str(e) for e in fn.entries],
    }


def mapping_certificate(mapping: BMMapping) -> Certificate:
    return Certificate(
        kind="bm_mapping",
        source=mapping.source,
        target=mapping.target,
        payload={"mapping": mapping.rows()},
    )


def separation_certificate(
    left: MonotoneFn, right: MonotoneFn, sep: Separation
) -> Certificate:
    return Certificate(
        kind="separation",
        source=left,
        target=right,
        payload={
            "relation": format_relation(sep.relation),
            "witness_inputs": [t.text for t in sep.witness.inputs],
            "witness_output": sep.witness.output.text,
            "invariant_side": {
                "function": right.label,
                "method": sep.invariant_method,
                "states": sep.invariant_states,
            },
        },
    )


@dataclass(frozen=True)
class CompareVerdict:
    relation: str  # equiparallel | left_below_strict | right_below_strict
    #              | incomparable | unknown
    evidence: tuple[Certificate, ...]
    notes: tuple[str, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "relation": self.relation,
            "evidence": [c.to_json_dict() for c in self.evidence],
            "notes": list(self.notes),
        }


def _try_term_route(
    f: MonotoneFn, g: MonotoneFn, config: SearchConfig
) -> Certificate | None:
    """Template-based positive route for the known families whose
    definability proofs are explicit terms (the near-unanimity chain and
    the bivalued cyclic rotations)."""
    from .terms import bg_rotation_terms, eval_term, format_term, inline_oracle, por_step_term
    from .zoo import bivalued_gustave, por

    def as_por(fn: MonotoneFn) -> int | None:
        if fn.arity >= 2 and fn == por(fn.arity):
            return fn.arity
        return None

    def as_bg(fn: MonotoneFn) -> tuple[int, int] | None:
        if fn.arity % 2 == 0 or fn.arity < 3:
            return None
        i = (fn.arity - 1) // 2
        for j in range(1, i + 1):
            if fn == bivalued_gustave(i, j):
                return (i, j)
        return None

    term = None
    a, b = as_por(f), as_por(g)
    if a is not None and b is not None and a >= b:
        if a == b:
            return None  # identity handled by the mapping route
        term = por_step_term(b)
        for mid in range(b + 1, a):
            term = inline_oracle(por_step_term(mid), term)
    else:
        fb, gb = as_bg(f), as_bg(g)
        if fb is not None and gb is not None and fb[0] == gb[0]:
            i, jf = fb
            jg = gb[1]
            if jf == jg:
                return None
            m1, m2 = bg_rotation_terms(i)
            step = m1 if jf > jg else m2
            term = step
            for _ in range(abs(jf - jg) - 1):
                term = inline_oracle(step, term)
    if term is None:
        return None
    if term.arity > config.table_bound:
        return None
    produced = eval_term(term, g, config)
    if produced != f:
        return None
    return Certificate(
        kind="term_chain",
        source=f,
        target=g,
        payload={"term": format_term(term).strip(), "oracle": g.label},
    )


def _positive(
    f: MonotoneFn, g: MonotoneFn, config: SearchConfig, allow_terms: bool, notes: list[str]
) -> Certificate | None:
    try:
        mapping = bm_search(f, g, config)
    except (BudgetExceededError, BoundExceededError) as exc:
        notes.append(f"mapping search {f.label} -> {g.label} skipped ({exc})")
        mapping = None
    if mapping is not None:
        return mapping_certificate(mapping)
    if allow_terms:
        return _try_term_route(f, g, config)
    return None


def compare(
    f: MonotoneFn,
    g: MonotoneFn,
    config: SearchConfig = DEFAULT_CONFIG,
    allow_terms: bool = False,
    extra_relations: tuple[Relation, ...] = (),
) -> CompareVerdict:
    """Run both positive and both negative searches and combine them
    into the strongest sound verdict.  Absence of a mapping is never
    converted into a negative claim; budget exhaustion degrades to
    "unknown" with a note."""
    notes: list[str] = []
    pos_lr = _positive(f, g, config, allow_terms, notes)
    pos_rl = _positive(g, f, config, allow_terms, notes)
    neg_lr_out = find_separating_relation(f, g, config, extra_relations)
    neg_rl_out = find_separating_relation(g, f, config, extra_relations)
    notes.extend(neg_lr_out.skipped)
    notes.extend(neg_rl_out.skipped)

    neg_lr = (
        separation_certificate(f, g, neg_lr_out.found) if neg_lr_out.found else None
    )
    neg_rl = (
        separation_certificate(g, f, neg_rl_out.found) if neg_rl_out.found else None
    )

    if pos_lr and neg_lr:
        raise SoundnessError(
            f"both {f.label} <= {g.label} and its negation are certified"
        )
    if pos_rl and neg_rl:
        raise SoundnessError(
            f"both {g.label} <= {f.label} and its negation are certified"
        )

    evidence = tuple(c for c in (pos_lr, pos_rl, neg_lr, neg_rl) if c)
    if pos_lr and pos_rl:
        relation = "equiparallel"
    elif pos_lr and neg_rl:
        relation = "left_below_strict"
    elif pos_rl and neg_lr:
        relation = "right_below_strict"
    elif neg_lr and neg_rl:
        relation = "incomparable"
    else:
        relation = "unknown"
        if pos_lr:
            notes.append("left <= right established; reverse direction unresolved")
        if pos_rl:
            notes.append("right <= left established; reverse direction unresolved")
        if neg_lr:
            notes.append("left not below right established; other direction open")
        if neg_rl:
            notes.append("right not below left established; other direction open")
    return CompareVerdict(relation, evidence, tuple(notes))
