"""Trace/evaluation round trips, the two constructions, and the
stability / sequentiality predicates."""

from __future__ import annotations

import pytest

from parlevel import (
    BOT,
    FF,
    TT,
    BoundExceededError,
    ComparableRowsError,
    FormatError,
    InconsistentOutputsError,
    MonotoneFn,
    NonMonotoneTableError,
    Tri,
    TriTuple,
    all_tuples,
    entry,
    fn_sum,
    format_trace,
    is_m_sequential,
    is_monovalued,
    is_stable,
    neg,
    parse_trace,
    table_of,
    trace_from_table,
    validate_trace,
    zoo,
)


def t(text: str) -> TriTuple:
    return TriTuple.from_text(text)


def test_eval_examples():
    f = zoo.ttdet()
    assert f.eval(t("T_")) == TT
    assert f.eval(t("__")) == BOT
    assert f.eval(t("TT")) == TT


def test_eval_arity_mismatch():
    with pytest.raises(Exception):
        zoo.ttdet().eval(t("T"))


def test_trace_from_table_por2():
    table = {x: zoo.por(2).eval(x) for x in all_tuples(2)}
    rebuilt = trace_from_table(2, table)
    assert rebuilt == zoo.por(2)


def test_trace_from_table_constant():
    table = {x: TT for x in all_tuples(3)}
    fn = trace_from_table(3, table)
    assert fn.entries == (entry("___", "T"),)


def test_trace_from_table_rejects_non_monotone():
    table = {x: BOT for x in all_tuples(1)}
    table[t("_")] = TT
    table[t("T")] = FF
    with pytest.raises(NonMonotoneTableError) as exc:
        trace_from_table(1, table)
    assert exc.value.low == "_"
    assert exc.value.high in ("T", "F")


def test_validate_trace_accepts_bp():
    fn = validate_trace(3, [entry("_TF", "T"), entry("TF_", "F"), entry("F_T", "F")])
    assert fn.trace_size == 3


def test_validate_trace_rejects_comparable_rows():
    with pytest.raises(ComparableRowsError):
        validate_trace(2, [entry("_T", "T"), entry("TT", "T")])


def test_validate_trace_rejects_comparable_even_when_inconsistent():
    with pytest.raises(ComparableRowsError):
        validate_trace(2, [entry("T_", "T"), entry("TT", "F")])


def test_validate_trace_rejects_inconsistent_outputs():
    with pytest.raises(InconsistentOutputsError):
        validate_trace(2, [entry("T_", "T"), entry("_T", "F")])


def test_validate_trace_rejects_duplicates():
    with pytest.raises(ComparableRowsError):
        validate_trace(2, [entry("T_", "T"), entry("T_", "T")])


def test_trace_outputs_must_be_defined():
    with pytest.raises(InconsistentOutputsError):
        entry("T_", Tri.BOT)


def test_neg_examples():
    assert all(e.output == FF for e in neg(zoo.ttdet()).entries)
    flipped = neg(zoo.bp())
    assert sorted(int(e.output) for e in flipped.entries) == [1, 1, 2]
    for fn in zoo.catalog(max_arity=5):
        assert neg(neg(fn)) == fn
        assert neg(fn).arity == fn.arity
        assert neg(fn).trace_size == fn.trace_size
        assert is_stable(neg(fn)) == is_stable(fn)


def test_sum_example_bp_ttdet():
    s = fn_sum(zoo.bp(), zoo.ttdet())
    assert s.arity == 4
    assert s.trace_size == 5
    inputs = {e.input.text for e in s.entries}
    assert inputs == {"T_TF", "TTF_", "TF_T", "FFT_", "FF_T"}


def test_sum_orients_wider_first():
    assert fn_sum(zoo.ttdet(), zoo.bp()) == fn_sum(zoo.bp(), zoo.ttdet())


def test_sum_trace_sizes_add_and_validate():
    pairs = [(zoo.bp(), zoo.gustave(1)), (zoo.por(2), zoo.det()), (zoo.ttdet(), zoo.ttdet())]
    for f, g in pairs:
        s = fn_sum(f, g)
        assert s.trace_size == f.trace_size + g.trace_size
        # construction passed MonotoneFn validation by virtue of existing


def test_stability_examples():
    assert is_stable(zoo.bp())
    assert not is_stable(zoo.por(2))
    for i in range(1, 5):
        assert is_stable(zoo.gustave(i))


def test_monovalued_examples():
    assert is_monovalued(zoo.gustave(1))
    assert not is_monovalued(zoo.bp())
    assert not is_monovalued(zoo.bivalued_gustave(1, 1))


def test_m_sequential_examples():
    assert is_m_sequential(zoo.left_strict_and())
    const = validate_trace(2, [entry("__", "T")])
    assert is_m_sequential(const)
    assert is_m_sequential(validate_trace(1, []))  # constantly undefined
    assert not is_m_sequential(zoo.por(2))


def test_m_sequential_bound():
    with pytest.raises(BoundExceededError):
        is_m_sequential(zoo.gustave(3))  # arity 7 over the default bound


def test_table_roundtrip_all_zoo():
    for fn in zoo.catalog():
        table = list(table_of(fn))
        rebuilt = trace_from_table(fn.arity, table)
        assert rebuilt == fn, fn.name


def test_eval_monotone_on_covering_pairs():
    for fn in zoo.catalog(max_arity=4):
        table = table_of(fn)
        k = fn.arity
        pow3 = [3 ** (k - 1 - c) for c in range(k)]
        for code in range(3**k):
            for c in range(k):
                if (code // pow3[c]) % 3 == 0:
                    for up in (1, 2):
                        hi = code + up * pow3[c]
                        assert table[code] == 0 or table[code] == table[hi]


def test_eval_agrees_with_table():
    fn = zoo.bivalued_gustave(2, 1)
    table = table_of(fn)
    for x in all_tuples(fn.arity):
        assert int(fn.eval(x)) == table[x.encode()]


def test_entries_sorted_canonically():
    fn = MonotoneFn(
        3,
        (entry("F_T", "F"), entry("_TF", "T"), entry("TF_", "F")),
    )
    assert [e.input.text for e in fn.entries] == ["_TF", "TF_", "F_T"]
    assert fn == zoo.bp()


def test_trace_format_roundtrip():
    for fn in zoo.catalog(max_arity=5):
        assert parse_trace(format_trace(fn)) == fn


def test_trace_format_keeps_name():
    text = format_trace(zoo.bp())
    assert text.startswith("# name: bp\n")
    assert parse_trace(text).name == "bp"


def test_parse_trace_errors_carry_line_numbers():
    with pytest.raises(FormatError) as exc:
        parse_trace("arity 2\nT_ -> T\nTT => F\n")
    assert "line 3" in str(exc.value)
    with pytest.raises(FormatError):
        parse_trace("T_ -> T\n")  # rows before arity
    with pytest.raises(FormatError):
        parse_trace("arity 2\nT_T -> T\n")  # wrong tuple length
    with pytest.raises(FormatError):
        parse_trace("arity 2\nT_ -> X\n")  # bad output


def test_parse_trace_accepts_comments_and_blanks():
    fn = parse_trace("# a comment\n\narity 2\n# another\nT_ -> T\n_T -> T\n")
    assert fn == zoo.ttdet()


def test_name_ignored_by_equality():
    assert zoo.bp().renamed("other") == zoo.bp()
