from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given

from keyvar.exactpoly import (ANY_DEGREE, Polynomial, Universe, evaluate_expression,
                              parse_polynomial)
from strategies import XYZ, fractions, points, polynomials

x, y, z = XYZ.vars("x", "y", "z")


def test_basic_arithmetic_and_printing():
    p = (x + 2 * y) ** 2 - 4 * x * y
    assert p == x ** 2 + 4 * y ** 2
    assert str(p) == "x^2 + 4*y^2"
    assert str(Fraction(1, 2) * x * z - 3) == "1/2*x*z - 3"
    assert str(XYZ.zero()) == "0"
    assert (x - x).is_zero() and not (x - x)


def test_numbers_compare_equal_to_constants():
    assert XYZ.const(3) == 3
    assert XYZ.zero() == 0
    assert (x + 1).constant_term() == 1


def test_universe_mismatch_raises():
    other = Universe(("x",))
    with pytest.raises(ValueError):
        x + other.var("x")


def test_unknown_variable_and_bad_exponents():
    with pytest.raises(KeyError):
        XYZ.var("w")
    with pytest.raises(ValueError):
        Polynomial(XYZ, {(1, 0): 1})
    with pytest.raises(ValueError):
        Polynomial(XYZ, {(-1, 0, 0): 1})
    with pytest.raises(ValueError):
        x ** -1


def test_division_by_scalar_only():
    assert (2 * x) / 2 == x
    with pytest.raises(ZeroDivisionError):
        x / 0
    with pytest.raises(TypeError):
        x / y


def test_weighted_degree():
    w = {"x": 1, "y": 2, "z": 3}
    assert (x * y + z).weighted_degree(w) == 3
    assert (x + y).weighted_degree(w) is None
    assert XYZ.zero().weighted_degree(w) == ANY_DEGREE
    assert (x ** 2 + y).is_homogeneous(w, 2)
    assert not (x ** 2 + y).is_homogeneous(w, 3)


def test_linear_part_and_constant():
    p = 3 + 2 * x - y + x * y
    assert p.linear_part() == {"x": 2, "y": -1}
    assert p.constant_term() == 3
    assert p.variables() == {"x", "y"}
    assert p.total_degree() == 2


def test_evaluate_requires_all_variables():
    with pytest.raises(KeyError):
        (x + y).evaluate({"x": 1})
    assert (x + y).evaluate({"x": 1, "y": Fraction(1, 2)}) == Fraction(3, 2)


def test_substitute_into_other_universe():
    t = Universe(("t",))
    s = t.var("t")
    p = (x ** 2 + y).substitute({"x": s, "y": s + 1, "z": 0}, target=t)
    assert p == s ** 2 + s + 1
    with pytest.raises(ValueError):
        (x * z).substitute({"x": s}, target=t)


def test_to_universe_and_shift():
    big = XYZ.extend(("w",))
    assert (x * y).to_universe(big) == big.var("x") * big.var("y")
    with pytest.raises(ValueError):
        big.var("w").to_universe(XYZ)
    assert (x ** 2).shift({"x": 1}) == x ** 2 + 2 * x + 1


def test_expression_evaluator():
    env = {"a": Fraction(2), "b": Fraction(3)}
    assert evaluate_expression("a^2 - b/3 + -a", env) == 1
    assert evaluate_expression("2**3", {}) == 8
    assert evaluate_expression("1/3", {}) == Fraction(1, 3)
    for bad in ("__import__('os')", "a.real", "a if b else 1", "f(a)", "a ^ 1.5"):
        with pytest.raises((ValueError, KeyError, TypeError)):
            evaluate_expression(bad, env)
    with pytest.raises(ValueError):
        evaluate_expression("c + 1", env)


def test_parse_polynomial_with_constants():
    p = parse_polynomial("a*x^2 - 1/2*y*z", XYZ, {"a": 3})
    assert p == 3 * x ** 2 - Fraction(1, 2) * y * z
    assert parse_polynomial("7", XYZ) == 7


def test_expansion_matches_sympy():
    sx, sy, sz = sympy.symbols("x y z")
    ours = (x - 2 * y + Fraction(1, 3) * z) ** 4 * (x * z - y)
    ref = sympy.expand((sx - 2 * sy + sympy.Rational(1, 3) * sz) ** 4 * (sx * sz - sy))
    assert parse_polynomial(str(sympy.expand(ref)).replace("**", "^"), XYZ) == ours


# -- properties ---------------------------------------------------------------

@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    assert a * 1 == a and a + 0 == a


@given(polynomials(), polynomials(), points)
def test_evaluation_is_a_ring_homomorphism(a, b, pt):
    assert (a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)
    assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)


@given(polynomials(), polynomials(max_terms=2), polynomials(max_terms=2), points)
def test_substitution_then_evaluation(a, f, g, pt):
    sub = a.substitute({"x": f, "y": g})
    inner = dict(pt, x=f.evaluate(pt), y=g.evaluate(pt))
    assert sub.evaluate(pt) == a.evaluate(inner)


@given(polynomials())
def test_string_round_trip(a):
    assert parse_polynomial(str(a), XYZ) == a


@given(polynomials(), polynomials())
def test_leibniz_rule(a, b):
    assert (a * b).diff("x") == a.diff("x") * b + a * b.diff("x")


@given(polynomials(), fractions)
def test_shift_is_substitution(a, c):
    assert a.shift({"y": c}) == a.substitute({"y": y + c})
