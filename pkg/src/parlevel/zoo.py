"""Named functions and families with their exact traces.

The cyclic families are generated from the parity closed form (row r
puts the undefined value at coordinate r; off-diagonal entries alternate
true/false by the parity of (column - row) modulo the arity); the tests
pin this against hard-coded matrices for the two smallest instances.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .config import DEFAULT_CONFIG, SearchConfig
from .errors import FormatError
from .functions import MonotoneFn, TraceEntry, fn_sum, neg, validate_trace
from .lattice import Tri, TriTuple


def _mk(arity: int, rows: Iterable[tuple[tuple[int, ...], int]], name: str) -> MonotoneFn:
    entries = [
        TraceEntry(TriTuple(tuple(Tri(v) for v in row)), Tri(out)) for row, out in rows
    ]
    return validate_trace(arity, entries, name)


def bp() -> MonotoneFn:
    return _mk(
        3,
        [((0, 1, 2), 1), ((1, 2, 0), 2), ((2, 0, 1), 2)],
        "bp",
    )


def _cyclic_rows(i: int) -> list[tuple[int, ...]]:
    n = 2 * i + 1
    rows = []
    for r in range(1, n + 1):
        rows.append(
            tuple(
                0 if c == r else (1 if ((c - r) % n) % 2 == 1 else 2)
                for c in range(1, n + 1)
            )
        )
    return rows


def gustave(i: int = 1) -> MonotoneFn:
    if i < 1:
        raise FormatError("gustave_i needs i >= 1")
    rows = [(row, 1) for row in _cyclic_rows(i)]
    return _mk(2 * i + 1, rows, f"gustave_i({i})")


def bivalued_gustave(i: int, j: int) -> MonotoneFn:
    if i < 1 or not 1 <= j <= i:
        raise FormatError(f"bg(i,j) needs 1 <= j <= i, got ({i},{j})")
    rows = [
        (row, 2 if r <= j else 1)
        for r, row in enumerate(_cyclic_rows(i), start=1)
    ]
    return _mk(2 * i + 1, rows, f"bg({i},{j})")


def por(i: int) -> MonotoneFn:
    if i < 2:
        raise FormatError("por_i needs i >= 2")
    rows = []
    for p in range(i):
        row = [1] * i
        row[p] = 0
        rows.append((tuple(row), 1))
    rows.append(((2,) * i, 2))
    return _mk(i, rows, f"por_i({i})")


def det() -> MonotoneFn:
    return _mk(2, [((1, 0), 1), ((2, 0), 1), ((0, 1), 1), ((0, 2), 1)], "det")


def ttdet() -> MonotoneFn:
    return _mk(2, [((1, 0), 1), ((0, 1), 1)], "ttdet")


def ntdet(n: int) -> MonotoneFn:
    if n < 1:
        raise FormatError("ntdet needs n >= 1")
    rows = []
    for p in range(n):
        row = [0] * n
        row[p] = 1
        rows.append((tuple(row), 1))
    return _mk(n, rows, f"ntdet({n})")


def left_strict_and() -> MonotoneFn:
    return _mk(2, [((2, 0), 2), ((1, 1), 1), ((1, 2), 2)], "lsand")


# ---------------------------------------------------------------------------
# Name grammar: atoms plus sum(x,y) / x+y / neg(x)
# ---------------------------------------------------------------------------

_ATOMS = {
    "bp": bp,
    "det": det,
    "ttdet": ttdet,
    "lsand": left_strict_and,
    "gustave": lambda: gustave(1),
}

_PARAM_RE = re.compile(r"^(gustave_i|por_i|ntdet|bg)\((\d+)(?:,(\d+))?\)$")


def _split_plus(text: str) -> list[str]:
    parts = []
    depth = 0
    cur = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def make(name: str) -> MonotoneFn:
    """Build a function from its textual name, e.g. 'bg(2,1)',
    'por_i(3)', 'sum(bp,ttdet)' (also written 'bp+ttdet'), 'neg(bp)'."""
    text = name.strip().lower().replace(" ", "")
    if not text:
        raise FormatError("empty function name")
    plus = _split_plus(text)
    if len(plus) > 1:
        if any(not p for p in plus):
            raise FormatError(f"bad sum expression {name!r}")
        acc = make(plus[0])
        for part in plus[1:]:
            acc = fn_sum(acc, make(part))
        return acc
    if text.startswith("sum(") and text.endswith(")"):
        inner = _split_args(text[4:-1], name)
        if len(inner) != 2:
            raise FormatError(f"sum takes two arguments: {name!r}")
        return fn_sum(make(inner[0]), make(inner[1]))
    if text.startswith("neg(") and text.endswith(")"):
        return neg(make(text[4:-1]))
    if text in _ATOMS:
        return _ATOMS[text]()
    m = _PARAM_RE.match(text)
    if m:
        family, p1, p2 = m.group(1), int(m.group(2)), m.group(3)
        if family == "bg":
            if p2 is None:
                raise FormatError("bg needs two parameters: bg(i,j)")
            return bivalued_gustave(p1, int(p2))
        if p2 is not None:
            raise FormatError(f"{family} takes one parameter")
        if family == "gustave_i":
            return gustave(p1)
        if family == "por_i":
            return por(p1)
        return ntdet(p1)
    raise FormatError(f"unknown function name {name!r}")


def _split_args(text: str, original: str) -> list[str]:
    args = []
    depth = 0
    cur = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise FormatError(f"unbalanced parentheses in {original!r}")
        if ch == "," and depth == 0:
            args.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    args.append("".join(cur))
    return [a for a in args]


def list_names() -> list[str]:
    """Names and parameter ranges, for the command-line listing."""
    return [
        "bp",
        "gustave_i(i), i >= 1   (gustave = gustave_i(1))",
        "bg(i,j), 1 <= j <= i",
        "por_i(i), i >= 2",
        "det",
        "ttdet",
        "ntdet(n), n >= 1",
        "lsand",
        "sum(f,g) or f+g",
        "neg(f)",
    ]


def catalog(max_arity: int | None = None) -> list[MonotoneFn]:
    """A fixed, deterministic selection of named instances."""
    fns = [bp()]
    fns += [gustave(i) for i in range(1, 5)]
    fns += [bivalued_gustave(i, j) for i in range(1, 5) for j in range(1, i + 1)]
    fns += [por(i) for i in range(2, 7)]
    fns += [det(), ttdet()]
    fns += [ntdet(n) for n in range(1, 4)]
    fns.append(left_strict_and())
    if max_arity is not None:
        fns = [f for f in fns if f.arity <= max_arity]
    return fns


# ---------------------------------------------------------------------------
# Self-test
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


GUSTAVE_MATRIX_1 = {(0, 1, 2), (1, 2, 0), (2, 0, 1)}
CYCLIC_MATRIX_1 = {(0, 1, 2), (2, 0, 1), (1, 2, 0)}
CYCLIC_MATRIX_2 = {
    (0, 1, 2, 1, 2),
    (2, 0, 1, 2, 1),
    (1, 2, 0, 1, 2),
    (2, 1, 2, 0, 1),
    (1, 2, 1, 2, 0),
}


def verify_zoo_invariants(config: SearchConfig = DEFAULT_CONFIG) -> list[CheckResult]:
    """Golden self-test of every family against its stated trace shape,
    coefficients and level; failures are carried in the report."""
    from .definability import bm_search  # local: avoids an import cycle
    from .functions import is_stable
    from .plevels import INF, ExtNat, PLevel, bcc, cc, p_level

    results: list[CheckResult] = []

    def check(name: str, ok: bool, detail: str = "") -> None:
        results.append(CheckResult(name, bool(ok), detail))

    def inputs_of(fn: MonotoneFn) -> set[tuple[int, ...]]:
        return {tuple(int(v) for v in e.input.entries) for e in fn.entries}

    check(
        "cyclic closed form matches printed matrix i=1",
        inputs_of(gustave(1)) == CYCLIC_MATRIX_1,
    )
    check(
        "cyclic closed form matches printed matrix i=2",
        inputs_of(gustave(2)) == CYCLIC_MATRIX_2,
    )
    check(
        "three-row all-true matrix equals cyclic family at i=1",
        inputs_of(gustave(1)) == GUSTAVE_MATRIX_1,
    )

    for i in range(1, 5):
        g = gustave(i)
        check(
            f"gustave_i({i}) trace size and coefficient",
            g.trace_size == 2 * i + 1 and cc(g, config) == ExtNat(2 * i + 1),
        )
        check(f"gustave_i({i}) stable and monovalued",
              is_stable(g) and len(set(g.outputs)) == 1)
        check(
            f"gustave_i({i}) level (inf, {2 * i})",
            p_level(g, config) == PLevel(INF, ExtNat(2 * i)),
        )
        for j in range(1, i + 1):
            h = bivalued_gustave(i, j)
            check(
                f"bg({i},{j}) level ({2 * i}, {2 * i})",
                p_level(h, config) == PLevel(ExtNat(2 * i), ExtNat(2 * i)),
            )
            check(f"bg({i},{j}) stable", is_stable(h))

    for i in range(2, 7):
        p = por(i)
        check(
            f"por_i({i}) level ({i}, 1)",
            p_level(p, config) == PLevel(ExtNat(i), ExtNat(1))
            and bcc(p, config) == ExtNat(i + 1),
        )
        check(f"por_i({i}) unstable", not is_stable(p))

    check("bp level (2, 2)", p_level(bp(), config) == PLevel(ExtNat(2), ExtNat(2)))
    check("bp stable", is_stable(bp()))
    for fn in (det(), ttdet()):
        check(
            f"{fn.name} level (inf, 1)",
            p_level(fn, config) == PLevel(INF, ExtNat(1)),
        )
        check(f"{fn.name} unstable", not is_stable(fn))
    check(
        "detector variants mutually definable by trace mappings",
        bm_search(det(), ttdet(), config) is not None
        and bm_search(ttdet(), det(), config) is not None,
    )
    check(
        "lsand sequential",
        p_level(left_strict_and(), config) == PLevel(INF, INF),
    )
    for fn in catalog():
        try:
            validate_trace(fn.arity, fn.entries, fn.name)
            check(f"{fn.name} trace validates", True)
        except Exception as exc:  # pragma: no cover - would be a build bug
            check(f"{fn.name} trace validates", False, str(exc))
    return results
