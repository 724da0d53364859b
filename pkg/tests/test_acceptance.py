"""Acceptance criteria, one test per criterion.

Each test prints a single pass line once its assertions hold; pytest -v
adds the per-criterion pass/fail verdicts.  Expected values are frozen
golden numbers: the level table, the brute-filter monotone counts, and
the construction replays were each computed by the independent oracles
in this suite (exhaustive enumeration, brute-force invariance, full
table equality)."""

from __future__ import annotations

import dataclasses
import itertools
import time

import pytest

import parlevel as pl
from parlevel import zoo
from parlevel.suites import SUM_PAIRS

CFG = pl.DEFAULT_CONFIG
WIDE = dataclasses.replace(CFG, table_bound=9)

INF = pl.INF


def lv(i, j) -> pl.PLevel:
    conv = lambda v: INF if v == "inf" else pl.ExtNat(v)
    return pl.PLevel(conv(i), conv(j))


def done(n: int, text: str) -> None:
    print(f"[criterion {n:02d}] PASS  {text}")


@pytest.fixture(scope="module")
def monotone_small():
    """Every monotone function of arity 1 and 2, from the brute filter."""
    fns = {k: list(pl.enumerate_monotone(k)) for k in (1, 2)}
    assert [len(fns[1]), len(fns[2])] == [11, 197]  # frozen brute-filter counts
    return fns


GOLDEN = (
    [("bp", lv(2, 2))]
    + [(f"gustave_i({i})", lv("inf", 2 * i)) for i in range(1, 5)]
    + [(f"bg({i},{j})", lv(2 * i, 2 * i)) for i in range(1, 5) for j in range(1, i + 1)]
    + [(f"por_i({i})", lv(i, 1)) for i in range(2, 7)]
    + [("det", lv("inf", 1)), ("ttdet", lv("inf", 1))]
    + [("bp+ttdet", lv(2, 1))]
    + [("lsand", lv("inf", "inf"))]
)


def test_criterion_01_zoo_level_golden_table():
    start = time.time()
    for name, want in GOLDEN:
        got = pl.p_level(zoo.make(name), CFG)
        assert got == want, f"{name}: {got} != {want}"
    elapsed = time.time() - start
    assert elapsed < 1.0, f"golden table took {elapsed:.2f}s"
    done(1, f"{len(GOLDEN)} golden levels exact in {elapsed * 1000:.0f} ms")


def test_criterion_02_brute_invariance_equals_prediction(monotone_small):
    relations = [pl.canonical_equal(m) for m in range(1, 5)] + [
        pl.canonical_strict(m) for m in range(0, 5)
    ]
    checks = 0
    for arity in (1, 2):
        for fn in monotone_small[arity]:
            level = pl.p_level(fn, CFG)
            for rel in relations:
                predicted = pl.predict_invariant(level, rel)
                brute = pl.is_invariant(fn, rel, CFG)
                assert predicted == brute, (fn, rel)
                checks += 1
    done(2, f"{checks} prediction/brute-force agreements, exact")


def test_criterion_03_reduction_and_closure_oracles():
    small = zoo.catalog(max_arity=3)
    reduction_checks = 0
    for n in range(1, 5):
        universe = list(range(1, n + 1))
        for b_size in range(0, n + 1):
            for b in itertools.combinations(universe, b_size):
                for a_size in range(0, b_size + 1):
                    for a in itertools.combinations(b, a_size):
                        rel = pl.PreseqRel(n, frozenset(a), frozenset(b))
                        canon = pl.canonicalize(rel)
                        for fn in small:
                            assert pl.is_invariant(fn, rel, CFG) == pl.is_invariant(
                                fn, canon, CFG
                            ), (fn.name, rel)
                            reduction_checks += 1
    closure_checks = 0
    for fn in small:
        for m in range(0, 4):
            strict_m = pl.is_invariant(fn, pl.canonical_strict(m), CFG)
            strict_next = pl.is_invariant(fn, pl.canonical_strict(m + 1), CFG)
            eq_next = pl.is_invariant(fn, pl.canonical_equal(m + 1), CFG)
            if m >= 1:
                eq_m = pl.is_invariant(fn, pl.canonical_equal(m), CFG)
                assert not strict_m or eq_m, (fn.name, m, "strict=>equal")
                assert not eq_next or eq_m, (fn.name, m, "equal step-down")
            assert not strict_next or strict_m, (fn.name, m, "strict step-down")
            closure_checks += 3
    done(3, f"{reduction_checks} reduction + {closure_checks} closure checks, exact")


def test_criterion_04_sequentiality_equivalence(monotone_small):
    top = pl.PLevel(INF, INF)
    for arity in (1, 2):
        for fn in monotone_small[arity]:
            recursive = pl.is_m_sequential(fn, CFG)
            no_coherence = pl.cc(fn, CFG) == INF
            at_top = pl.p_level(fn, CFG) == top
            assert recursive == no_coherence == at_top, fn
    done(4, "recursive test == no-coherent-subset == top level, all arity<=2")


def test_criterion_05_hierarchy_strictness():
    start = time.time()
    brute_verified = 0
    for builder in (zoo.gustave, lambda i: zoo.bivalued_gustave(i, 1)):
        for i in range(1, 5):
            for j in range(i + 1, 5):
                low, high = builder(i), builder(j)
                # level-comparison fast path flags the pair first
                assert "left_not_below_right" in pl.inexpressible_by_plevel(
                    low, high, CFG
                )
                out = pl.find_separating_relation(low, high, CFG)
                sep = out.found
                assert sep is not None, (low.name, high.name)
                assert sep.witness.verify(low)
                if sep.invariant_method == "brute":
                    brute_verified += 1
                else:
                    # the skipped brute check is recorded with its cost
                    assert sep.invariant_states > CFG.budget
    assert brute_verified >= 1  # the smallest instance fits the budget
    for builder in (zoo.gustave, lambda i: zoo.bivalued_gustave(i, 1)):
        for i in range(1, 4):
            for j in range(i, 4):
                assert pl.bm_search(builder(j), builder(i), CFG) is not None
    elapsed = time.time() - start
    assert elapsed < 60.0
    done(5, f"12 separations verified, 12 mappings found in {elapsed:.1f}s")


def test_criterion_06_chain_separation():
    start = time.time()
    rel = pl.chain_relation(3)
    f3 = pl.fn_sum(zoo.bp(), zoo.por(3))
    f2 = pl.fn_sum(zoo.bp(), zoo.por(2))
    assert f3.arity == 4 and f2.arity == 4
    assert pl.is_invariant(f3, rel, CFG)
    witness = pl.invariance_counterexample(f2, rel, CFG)
    assert witness is not None
    assert witness.verify(f2)
    elapsed = time.time() - start
    assert elapsed < 300.0
    done(6, f"chain relation separates the two join rungs in {elapsed:.1f}s")


def test_criterion_07_term_replays():
    for i in (2, 3, 4):
        assert pl.eval_term(pl.por_step_term(i), zoo.por(i), WIDE) == zoo.por(i + 1)
    for i in (1, 2, 3):
        m1, m2 = pl.bg_rotation_terms(i)
        for j in range(2, i + 1):
            assert (
                pl.eval_term(m1, zoo.bivalued_gustave(i, j - 1), WIDE)
                == zoo.bivalued_gustave(i, j)
            )
            assert (
                pl.eval_term(m2, zoo.bivalued_gustave(i, j), WIDE)
                == zoo.bivalued_gustave(i, j - 1)
            )
    for i in (1, 2):
        g = zoo.gustave(i)
        assert pl.eval_term(pl.mono_to_det_term(g), zoo.ntdet(2 * i + 1), WIDE) == g
    done(7, "step, rotation and detector-synthesis terms replay exactly")


def test_criterion_08_mapping_incompleteness_regression():
    assert pl.bm_search(zoo.por(3), zoo.por(2), CFG) is None
    verdict = pl.compare(zoo.por(3), zoo.por(2), CFG)
    assert verdict.relation == "unknown"
    for cert in verdict.evidence:
        if cert.kind == "separation":
            # the only separation allowed is right-not-below-left
            assert cert.source == zoo.por(2) and cert.target == zoo.por(3)
    # the positive direction is recovered by the term route (criterion 7)
    with_terms = pl.compare(zoo.por(3), zoo.por(2), CFG, allow_terms=True)
    assert with_terms.relation == "left_below_strict"
    done(8, "no mapping, no fake negative; comparison honestly unknown")


def test_criterion_09_sum_laws():
    assert len(SUM_PAIRS) == 15
    for left, right in SUM_PAIRS:
        f, g = zoo.make(left), zoo.make(right)
        s = pl.fn_sum(f, g)
        assert pl.p_level(s, CFG) == pl.p_level_of_sum(
            pl.p_level(f, CFG), pl.p_level(g, CFG)
        ), (left, right)
        assert pl.bm_search(f, s, CFG) is not None, (left, right)
        assert pl.bm_search(g, s, CFG) is not None, (left, right)
    done(9, f"level law and both embeddings hold for {len(SUM_PAIRS)} pairs")


def test_criterion_10_equiparallelism_checks():
    assert pl.bm_search(zoo.det(), zoo.ttdet(), CFG) is not None
    assert pl.bm_search(zoo.ttdet(), zoo.det(), CFG) is not None
    assert pl.classify(zoo.bivalued_gustave(1, 1), CFG).degree_alias == "BP"
    detector_level = lv("inf", 1)
    for fn in zoo.catalog():
        rep = pl.classify(fn, CFG)
        if rep.plevel == detector_level:
            assert rep.degree_alias == "DET", fn.name
    # sums landing on the detector level are aliased too
    rep = pl.classify(zoo.make("gustave+ttdet"), CFG)
    assert rep.plevel == detector_level and rep.degree_alias == "DET"
    done(10, "detector degree aliased everywhere it appears; bg(1,1) is BP")
