from __future__ import annotations

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from keyvar import hilbert as hs
from keyvar.classdb import load_all, load_class
from keyvar.grading import ws_from_free

t = sympy.symbols("t")


def sympy_series(rec, terms):
    """Independent expansion of N(t) prod(1 - t^a) / prod(1 - t^w), with each
    1/(1 - t^w) written as a truncated geometric series."""
    ws = rec.weights
    num = sum(c * t ** e for e, c in hs.numerator_coefficients(ws).items())
    for a in rec.cuts:
        num *= 1 - t ** a
    series = sympy.Poly(num, t)
    for w in hs.denominator_weights(ws, rec.variant):
        geo = sympy.Poly(sum(t ** (k * w) for k in range(terms // w + 1)), t)
        series = sympy.Poly(sympy.rem((series * geo).as_expr(), t ** (terms + 1)), t)
    return [int(series.coeff_monomial(t ** i)) for i in range(terms + 1)]


@pytest.mark.parametrize("no", [393, 1218, 24078, 16227])
def test_series_matches_sympy(no):
    rec = load_class(no)
    assert hs.hilbert_series(rec.weights, rec.variant, rec.cuts, 24) == sympy_series(rec, 24)


def test_frozen_numerator_of_24078():
    assert str(hs.hilbert_numerator(load_class(24078).weights)) == \
        "t^10 - t^8 - 4*t^7 + 8*t^5 - 4*t^3 - t^2 + 1"


def test_resolution_profile_sizes():
    prof = hs.resolution_profile(load_class(393).weights)
    assert [len(getattr(prof, k)) for k in ("P0", "P1", "P2", "P3", "P4")] == [1, 9, 16, 9, 1]
    assert prof.P4 == (44,)


@pytest.mark.parametrize("rec", load_all(), ids=lambda r: str(r.grdb_no))
def test_class_hilbert_data(rec):
    ws = rec.weights
    assert hs.is_palindromic(ws)
    assert hs.anticanonical_check(rec)
    coeffs = hs.hilbert_series(ws, rec.variant, rec.cuts, 2 * ws.delta)
    assert min(coeffs) >= 0 and coeffs[0] == 1
    assert coeffs[1] == list(rec.ambient).count(1)
    assert hs.genus(rec) == coeffs[1] - 2


def test_24078_has_six_sections():
    assert hs.hilbert_series(load_class(24078).weights, "Sigma14", [1] * 10, 1) == [1, 6]


def test_numerator_has_codimension_four_zero_at_one():
    # a codimension-four ring has (1 - t)^4 dividing the numerator
    for rec in load_all():
        n = sum(c * t ** e for e, c in hs.numerator_coefficients(rec.weights).items())
        q, r = sympy.div(sympy.Poly(n, t), sympy.Poly((1 - t) ** 4, t))
        assert r.is_zero


def test_invalid_inputs():
    ws = load_class(393).weights
    with pytest.raises(ValueError):
        hs.hilbert_series(ws, "Sigma13", [2], -1)
    with pytest.raises(ValueError):
        hs.hilbert_series(ws, "Sigma14", [2], 3)  # s33 has weight 0
    with pytest.raises(ValueError):
        hs.hilbert_series(load_class(24078).weights, "Sigma13", [1], 3)
    with pytest.raises(ValueError):
        hs.hilbert_series(ws, "Sigma13", [0], 3)
    with pytest.raises(ValueError):
        hs.denominator_weights(ws, "Sigma12")
    with pytest.raises(ValueError):
        hs.series_divide([1], [2, 1], 3)


def test_genus_requires_anticanonical_class():
    rec = load_class(393)
    bad = type("R", (), {"weights": rec.weights, "cuts": list(rec.cuts) + [1],
                         "variant": rec.variant, "grdb_no": 0})()
    with pytest.raises(ValueError):
        hs.genus(bad)


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6),
       st.lists(st.integers(-3, 3), min_size=0, max_size=4), st.sampled_from([1, -1]))
def test_series_divide_inverts_multiplication(num, tail, lead):
    den = [lead] + tail
    terms = 10
    q = hs.series_divide(num, den, terms)
    prod = [sum(den[j] * q[i - j] for j in range(len(den)) if 0 <= i - j) for i in range(terms + 1)]
    assert prod == [num[i] if i < len(num) else 0 for i in range(terms + 1)]


@given(st.integers(2, 14), st.lists(st.integers(1, 8), min_size=3, max_size=3),
       st.integers(1, 9), st.integers(1, 14))
def test_numerator_palindromic_for_every_weight_system(d0, wp, wr, wu):
    assert hs.is_palindromic(ws_from_free(d0, *sorted(wp), wr, wu))
