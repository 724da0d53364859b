"""Relation membership, brute-force invariance with witnesses,
canonicalization, chains, and the separating-relation search."""

from __future__ import annotations

import dataclasses

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parlevel import (
    BudgetExceededError,
    DEFAULT_CONFIG,
    FormatError,
    PreseqRel,
    SeqRel,
    TriTuple,
    canonical_equal,
    canonical_strict,
    canonicalize,
    chain_relation,
    find_separating_relation,
    fn_sum,
    format_relation,
    invariance_counterexample,
    is_invariant,
    parse_relation,
    parse_relation_file,
    zoo,
)


def t(text: str) -> TriTuple:
    return TriTuple.from_text(text)


def rel(n, a, b) -> PreseqRel:
    return PreseqRel(n, frozenset(a), frozenset(b))


def test_member_examples():
    r = rel(2, {1}, {1, 2})
    assert r.member(t("_T"))
    assert not r.member(t("TF"))
    universal = rel(3, set(), set())
    for code in range(27):
        assert universal.member(TriTuple.decode(code, 3))


def test_member_requires_matching_arity():
    with pytest.raises(Exception):
        rel(2, {1}, {1, 2}).member(t("TTT"))


def test_relation_validation():
    with pytest.raises(FormatError):
        rel(2, {1, 2}, {1})  # A not inside B
    with pytest.raises(FormatError):
        rel(2, {1}, {1, 3})  # B outside 1..n
    with pytest.raises(Exception):
        rel(0, set(), set())


def test_seqrel_membership_is_conjunction():
    r = chain_relation(3)
    for code in range(27):
        d = TriTuple.decode(code, 3)
        assert r.member(d) == all(c.member(d) for c in r.conjuncts)


def test_invariance_examples():
    # the all-true cyclic function respects the strict relation at its level
    assert is_invariant(zoo.gustave(1), rel(3, {1, 2}, {1, 2, 3}))
    # the near-unanimity function of width 2 breaks the equal relation of size 3
    w = invariance_counterexample(zoo.por(2), rel(3, {1, 2, 3}, {1, 2, 3}))
    assert w is not None and w.verify(zoo.por(2))
    # universal relation: everything is invariant
    assert is_invariant(zoo.por(2), rel(4, set(), set()))


def test_every_monotone_fn_respects_the_smallest_relations():
    for fn in zoo.catalog(max_arity=3):
        assert is_invariant(fn, canonical_equal(2))
        assert is_invariant(fn, canonical_strict(1))


def test_witness_is_deterministic():
    r = rel(3, {1, 2, 3}, {1, 2, 3})
    w1 = invariance_counterexample(zoo.por(2), r)
    w2 = invariance_counterexample(zoo.por(2), r)
    assert w1 == w2


def test_witness_replay_machinery():
    r = canonical_strict(2)
    w = invariance_counterexample(zoo.ttdet(), r)
    assert w is not None
    assert w.verify(zoo.ttdet())
    # replay recomputes the columns: a function with other outputs fails
    assert not w.verify(zoo.left_strict_and())
    # and an arity mismatch can never replay
    assert not w.verify(zoo.bp())


def test_budget_error_reports_required_and_allowed():
    small = dataclasses.replace(DEFAULT_CONFIG, budget=10)
    with pytest.raises(BudgetExceededError) as exc:
        is_invariant(zoo.bp(), canonical_equal(3), small)
    assert exc.value.allowed == 10
    assert exc.value.required == 21**3


def test_canonicalize_golden():
    assert canonicalize(rel(5, {2, 4}, {2, 4, 5})) == rel(3, {1, 2}, {1, 2, 3})
    assert canonicalize(rel(4, {1, 3}, {1, 3})) == rel(2, {1, 2}, {1, 2})
    canonical = rel(3, {1, 2}, {1, 2, 3})
    assert canonicalize(canonical) == canonical
    assert canonicalize(rel(4, set(), set())) == rel(1, set(), set())
    assert canonicalize(rel(1, set(), set())) == rel(1, set(), set())


def test_canonicalize_preserves_invariance_spot():
    fns = [zoo.bp(), zoo.por(2), zoo.gustave(1), zoo.ttdet()]
    rels = [
        rel(4, {2, 4}, {2, 4}),
        rel(4, {2}, {2, 3}),
        rel(3, {3}, {1, 2, 3}),
        rel(4, set(), {1, 4}),
    ]
    for fn in fns:
        for r in rels:
            assert is_invariant(fn, r) == is_invariant(fn, canonicalize(r))


def test_padding_keeps_invariance():
    # same index sets at growing ambient arity
    fns = [zoo.bp(), zoo.por(2), zoo.ttdet(), zoo.gustave(1)]
    for fn in fns:
        for a, b in (({1, 2}, {1, 2}), ({1}, {1, 2}), ({1, 2}, {1, 2, 3})):
            n0 = max(b)
            results = {
                is_invariant(fn, rel(n, a, b)) for n in (n0, n0 + 1, n0 + 2)
            }
            assert len(results) == 1


@settings(max_examples=30, deadline=None)
@given(
    st.permutations(list(range(1, 5))),
    st.sampled_from([({1, 2}, {1, 2}), ({1}, {1, 2}), ({1, 2}, {1, 2, 3}), ({2}, {2, 4})]),
    st.sampled_from(["bp", "por_i(2)", "ttdet", "gustave_i(1)", "lsand"]),
)
def test_permutation_keeps_invariance(perm, ab, name):
    a, b = ab
    fn = zoo.make(name)
    mapping = {i: perm[i - 1] for i in range(1, 5)}
    pa = frozenset(mapping[i] for i in a)
    pb = frozenset(mapping[i] for i in b)
    assert is_invariant(fn, rel(4, a, b)) == is_invariant(fn, rel(4, pa, pb))


def test_chain_relation_shapes():
    c2 = chain_relation(2)
    assert len(c2.conjuncts) == 1 and c2.n == 2
    c3 = chain_relation(3)
    assert len(c3.conjuncts) == 2 and c3.n == 3
    assert not c3.member(t("TTF"))
    assert c3.member(t("TT_"))
    with pytest.raises(FormatError):
        chain_relation(1)


def test_find_separating_relation_golden():
    out = find_separating_relation(zoo.gustave(1), zoo.gustave(2))
    assert out.found is not None
    assert out.found.relation == rel(4, {1, 2, 3}, {1, 2, 3, 4})
    assert out.found.witness.verify(zoo.gustave(1))


def test_find_separating_relation_self_is_none():
    out = find_separating_relation(zoo.bp(), zoo.bp())
    assert out.found is None


def test_find_separating_relation_chain_route():
    f2 = fn_sum(zoo.bp(), zoo.por(2))
    f3 = fn_sum(zoo.bp(), zoo.por(3))
    out = find_separating_relation(f2, f3)
    assert out.found is not None
    assert isinstance(out.found.relation, SeqRel)
    assert out.found.relation == chain_relation(3)
    assert out.found.witness.verify(f2)


def test_parse_and_format_relations():
    r = parse_relation("preseq n=4 A=1,2 B=1,2,3")
    assert r == rel(4, {1, 2}, {1, 2, 3})
    assert parse_relation(format_relation(r)) == r
    empty_a = parse_relation("preseq n=2 A= B=1,2")
    assert empty_a == rel(2, set(), {1, 2})
    s = parse_relation("seqrel n=3 {A=1,2 B=1,2} {A=1,2,3 B=1,2,3}")
    assert s == chain_relation(3)
    assert parse_relation(format_relation(s)) == s


def test_parse_relation_file_and_errors():
    rels = parse_relation_file("# comment\npreseq n=2 A=1 B=1,2\n\nseqrel n=2 {A=1,2 B=1,2}\n")
    assert len(rels) == 2
    with pytest.raises(FormatError):
        parse_relation("preseq n=0 A= B=")
    with pytest.raises(FormatError):
        parse_relation("preseq n=2 A=1,2 B=1")
    with pytest.raises(FormatError):
        parse_relation("seqrel n=2")
    with pytest.raises(FormatError) as exc:
        parse_relation_file("preseq n=2 A=1 B=1,2\nnonsense\n")
    assert "line 2" in str(exc.value)


def test_member_matrix_order_is_code_order():
    from parlevel.relations import member_matrix

    mat = member_matrix(canonical_equal(2))
    codes = [int(3 * a + b) for a, b in mat]
    assert codes == sorted(codes)
