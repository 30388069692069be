from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from keyvar import singcheck as sc
from keyvar.classdb import load_class
from keyvar.keyvarieties import COORDS, build_sigma13, build_sigma14, chart_sample, random_gl3


@pytest.fixture(scope="module")
def s14():
    return build_sigma14()


def types_of(no, seed):
    rep = sc.verify_class_lpc(load_class(no), seed)
    assert rep["ok"], rep
    return {t["label"]: t["type"] for t in rep["targets"]}


def test_lpc_393():
    assert types_of(393, 1) == {"u-point": "1/9(4,5)", "p4-point": "1/5(1,4)",
                                "p5-point": "1/5(2,3)", "p2-point": "1/2(1,1)"}


def test_lpc_360_and_1218():
    assert types_of(360, 2) == {"p1-point": "1/7(2,5)", "p4-point": "1/6(1,5)"}
    assert sorted(types_of(1218, 3).values()) == ["1/5(1,4)", "1/5(2,3)", "1/5(2,3)"]


@pytest.mark.parametrize("no,expected", [(11004, "1/7(3,4)"), (16227, "1/5(2,3)"),
                                         (24078, "1/3(1,2)")])
def test_lpc_generic_sections(no, expected):
    assert types_of(no, 1) == {"u-point": expected}


def test_u_point_survivors_of_574():
    rep = sc.verify_class_lpc(load_class(574), 1)
    u = rep["targets"][0]
    assert u["surviving"] == ["t1", "t2"] and u["type"] == "1/7(3,4)"


def test_quotient_type_parsing():
    q = sc.QuotientType.parse("1/7( 5,2)")
    assert q == sc.QuotientType(7, (2, 5)) and str(q) == "1/7(2,5)"
    assert q.is_isolated()
    assert not sc.QuotientType.parse("1/4(2,2)").is_isolated()
    assert str(sc.QuotientType.parse("smooth")) == "smooth"
    with pytest.raises(ValueError):
        sc.QuotientType.parse("1/7[2,5]")


def test_localize_rejects_bad_targets():
    rec = load_class(393)
    pres, sec = rec.presentation(), rec.section_table()
    values = {p: Fraction(1) for p in sec.params}
    subs = sec.instantiate(values)
    w = rec.weights.as_dict()
    with pytest.raises(sc.LocalizationError):
        sc.localize(pres, subs, "u", {"u": Fraction(0)}, w)
    with pytest.raises(sc.LocalizationError):
        sc.localize(pres, subs, "u", {"u": Fraction(1), "p3": Fraction(1)}, w)
    with pytest.raises(sc.LocalizationError):
        sc.localize(pres, subs, "u", {"u": Fraction(1), "q1": Fraction(1)}, w)


def test_lpc_type_dimension_mismatch():
    rec = load_class(393)
    pres, sec = rec.presentation(), rec.section_table()
    subs = sec.instantiate({p: Fraction(2) for p in sec.params})
    lm = sc.localize(pres, subs, "u", {"u": Fraction(1)}, rec.weights.as_dict())
    assert str(sc.lpc_type(lm)) == "1/9(4,5)"
    with pytest.raises(sc.LocalizationError):
        sc.lpc_type(lm, expected_dim=3)


def test_missing_parameters():
    sec = load_class(393).section_table()
    with pytest.raises(ValueError):
        sec.instantiate({})


def test_section_check_flags_inhomogeneous_row():
    rec = load_class(1091)
    rows = [tuple(r) for r in rec.section_spec["rows"]]
    rows[-1] = ("q1", "a1*p1+b1*s13^2")
    bad = sc.SectionTable.from_rows(rows, rec.weights.as_dict())
    problems = bad.check(rec.weights.as_dict())
    assert len(problems) == 1 and "q1" in problems[0]


def test_section_rows_must_be_distinct():
    with pytest.raises(ValueError):
        sc.SectionTable.from_rows([("q1", "0"), ("q1", "p1")], load_class(393).weights.as_dict())


def test_degenerate_samples_are_retried_then_reported():
    rec = load_class(393)
    target = {"label": "x", "chart": "u", "point": {"u": "1/(a0-a0)"}}
    with pytest.raises(sc.DegenerateSample):
        sc.run_lpc_target(rec.presentation(), rec.section_table(), rec.weights.as_dict(),
                          target, random.Random(0), retries=3)


def test_wrong_expected_type_fails():
    rec = load_class(393)
    bad = dict(rec.lpc_targets[0], expected="1/9(1,8)")
    fake = type("R", (), {"grdb_no": 393, "presentation": rec.presentation,
                          "section_table": rec.section_table, "weights": rec.weights,
                          "lpc_targets": (bad,)})()
    assert not sc.verify_class_lpc(fake, 1)["ok"]


# -- Jacobian ---------------------------------------------------------------

def test_jacobian_at_origin_is_zero(s14):
    assert sc.jacobian_rank(s14, {n: Fraction(0) for n in COORDS}) == 0


def test_jacobian_generic_rank_four(s14):
    assert set(sc.generic_jacobian_ranks(s14, 12, seed=4)) == {4}


@pytest.mark.parametrize("which", ["S1", "S2", "S3", "S4"])
def test_singular_loci(s14, which):
    ranks = sc.locus_jacobian_ranks(s14, which, 5, seed=7)
    assert all(r < 4 for r in ranks)


def test_slice_jacobian_uses_free_coordinates():
    s13 = build_sigma13()
    pt = chart_sample("p1", 3, fixed={"s33": 1})
    assert sc.jacobian_rank(s13, pt) == 4


def test_unknown_locus():
    with pytest.raises(ValueError):
        sc.singular_locus_point("S9", random.Random(0))


# -- fibers -----------------------------------------------------------------

def test_fiber_examples():
    i3 = sc.symmetric_from_entries([1, 0, 0, 1, 0, 1])
    f = sc.fiber_invariants(i3, [0, 0, 1])
    assert (f.rank_s, f.q_t, f.rank_bsb, f.label) == (3, 1, 2, sc.LABEL_P2P2)
    f = sc.fiber_invariants(sc.symmetric_from_entries([1, 0, 0, -1, 0, 1]), [1, 1, 0])
    assert (f.rank_s, f.q_t, f.rank_bsb, f.label) == (3, 0, 1, sc.LABEL_P22)
    zero = sc.symmetric_from_entries([0] * 6)
    assert sc.fiber_invariants(zero, [0, 0, 0]).label == sc.LABEL_S0_T0


def test_fiber_table_representatives():
    assert sc.fiber_table_mismatches() == []


def test_fiber_input_validation():
    with pytest.raises(ValueError):
        sc.fiber_invariants([[1, 2, 0], [0, 1, 0], [0, 0, 1]], [1, 0, 0])
    with pytest.raises(ValueError):
        sc.symmetric_from_entries([1, 2, 3])


def test_inconsistent_triples_are_labelled():
    assert sc.fiber_label(3, True, 0, False, False) == sc.LABEL_INCONSISTENT
    assert sc.fiber_label(2, False, 1, False, False) == sc.LABEL_INCONSISTENT


sym_entries = st.lists(st.integers(-3, 3), min_size=6, max_size=6)
vectors = st.lists(st.integers(-3, 3), min_size=3, max_size=3)


@given(sym_entries, vectors, st.integers(0, 10 ** 6))
def test_fiber_label_is_twist_invariant(entries, t, seed):
    s = sc.symmetric_from_entries(entries)
    g = random_gl3(random.Random(seed))
    s2, t2 = sc.twist_base_point(g, s, t)
    assert sc.fiber_invariants(s2, t2).label == sc.fiber_invariants(s, t).label


@given(sym_entries, vectors)
def test_random_base_points_get_consistent_labels(entries, t):
    assert sc.fiber_invariants(sc.symmetric_from_entries(entries), t).label != sc.LABEL_INCONSISTENT
