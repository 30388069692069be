from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from keyvar import symmatrix as sm
from keyvar.exactpoly import Universe
from strategies import int_matrices, skew_matrices


def test_shape_checks():
    with pytest.raises(ValueError):
        sm.determinant([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(ValueError):
        sm.matmul([[1, 2]], [[1, 2]])
    with pytest.raises(ValueError):
        sm.pfaffian([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        sm.pfaffian([[0] * 3 for _ in range(3)])
    with pytest.raises(ValueError):
        sm.sub_pfaffians([[0, 1], [-1, 0]])


def test_small_values():
    assert sm.determinant([[2]]) == 2
    assert sm.determinant([[1, 2], [3, 4]]) == -2
    assert sm.pfaffian([[0, 5], [-5, 0]]) == 5
    assert sm.numeric_rank([[0, 0], [0, 0]]) == 0
    assert sm.numeric_rank([[1, 2], [2, 4]]) == 1


def test_symbolic_pfaffian_of_generic_4x4():
    u = Universe(("a", "b", "c", "d", "e", "f"))
    a, b, c, d, e, f = u.vars(*u.names)
    m = sm.skew_from_upper([[a, b, c], [d, e], [f]], u.zero())
    assert sm.pfaffian(m) == a * f - b * e + c * d
    assert sm.pfaffian(m) ** 2 == sm.determinant(m)


@given(int_matrices(4))
def test_determinant_matches_sympy(m):
    assert sm.determinant(m) == sympy.Matrix(m).det()


@given(int_matrices(3))
def test_adjugate_identity(m):
    d = sm.determinant(m)
    assert sm.matmul(m, sm.adjugate(m)) == sm.scale(sm.identity(3), d)


@given(st.sampled_from([2, 4, 6]).flatmap(skew_matrices))
def test_pfaffian_squared_is_determinant(m):
    assert sm.pfaffian(m) ** 2 == sm.determinant(m)


@given(skew_matrices(5))
def test_sub_pfaffians_span_the_kernel(m):
    # the vector of signed sub-Pfaffians lies in the kernel of a 5x5 skew matrix
    v = sm.sub_pfaffians(m)
    assert sm.matvec(m, v) == [0] * 5


@given(st.integers(1, 5).flatmap(lambda n: st.lists(
    st.lists(st.builds(Fraction, st.integers(-3, 3), st.integers(1, 3)), min_size=n, max_size=n),
    min_size=1, max_size=5)))
def test_rank_agrees_with_row_reduction_and_sympy(rows):
    r = sm.numeric_rank(rows)
    reduced, pivots = sm.row_reduce(rows)
    assert r == len(pivots)
    assert r == sympy.Matrix(rows).rank()
