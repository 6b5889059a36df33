from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lila.graded import (DimensionError, GradedSpace, LinearMap, complement, image, kernel, nullspace,
                         rank, rref, shift, solve_linear, solve_matrix, span_basis)
from oracles import rank_sympy

small = st.integers(-4, 4)
matrices = st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=1, max_size=4))


def test_labels_order_by_degree_then_index():
    E = GradedSpace({"-1": 2, "-2": 1, "0": 0})
    assert E.labels == [(-2, 0), (-1, 0), (-1, 1)]
    assert E.deg == [-2, -1, -1]
    assert E.pos[(-1, 1)] == 2


def test_negative_dimension_rejected():
    with pytest.raises(DimensionError):
        GradedSpace({0: -1})


def test_shift_moves_degrees_down():
    assert shift(GradedSpace({-1: 3}), 1).components == {-2: 3}


@given(matrices)
def test_rank_matches_sympy(rows):
    assert rank(rows) == rank_sympy(rows)


@given(matrices)
def test_rref_rows_are_reduced(rows):
    red, piv = rref(rows)
    for r, c in zip(red, piv):
        assert r[c] == 1
        assert all(other[c] == 0 for other in red if other is not r)


@given(matrices, st.data())
def test_solve_matrix_solution_or_inconsistent(rows, data):
    b = data.draw(st.lists(small, min_size=len(rows), max_size=len(rows)))
    x = solve_matrix(rows, b)
    aug = [r + [bi] for r, bi in zip(rows, b)]
    if x is None:
        assert rank_sympy(aug) > rank_sympy(rows)
    else:
        assert [sum(Fraction(a) * xi for a, xi in zip(r, x)) for r in rows] == [Fraction(v) for v in b]


@given(matrices)
def test_nullspace_dimension(rows):
    n = len(rows[0])
    basis = nullspace(rows, n)
    assert len(basis) == n - rank_sympy(rows)
    for v in basis:
        assert all(sum(Fraction(a) * x for a, x in zip(r, v)) == 0 for r in rows)


def test_solve_linear_and_span():
    E = GradedSpace({0: 3})
    u, v = E.vector({(0, 0): 1, (0, 1): 1}), E.vector({(0, 1): 1, (0, 2): 1})
    assert solve_linear([u, v], E.vector({(0, 0): 2, (0, 1): 5, (0, 2): 3})) == [2, 3]
    assert solve_linear([u, v], E.vector({(0, 0): 1})) is None
    assert len(span_basis([u, v, u + v])) == 2
    assert len(complement([u, v], E)) == 1


def test_kernel_image_of_map():
    E = GradedSpace({-1: 2, 0: 1})
    f = LinearMap(E, E, {0: {(-1, 1): 1}, 1: {}, 2: {(0, 0): 3}})
    assert f.is_degree_preserving()
    assert len(kernel(f)) == 1
    assert len(image(f)) == 2
    g = LinearMap(E, E, {0: {(0, 0): 1}})
    assert not g.is_degree_preserving()


def test_exact_rationals_survive():
    x = solve_matrix([[3, 0], [0, 7]], [1, 1])
    assert x == [Fraction(1, 3), Fraction(1, 7)]
