from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hnil.linalg import Matrix, in_span, kernel_basis, rank, rref, solve, vec


def test_rref_proportional_rows():
    m = Matrix.from_rows([[1, 2], [2, 4]])
    reduced, pivots = rref(m)
    assert pivots == (0,)
    assert reduced.row(0) == vec(1, 2)
    assert reduced.row(1) == vec(0, 0)


def test_rref_zero_matrix():
    reduced, pivots = rref(Matrix.from_rows([[0]]))
    assert pivots == ()
    assert reduced == Matrix.from_rows([[0]])


def test_rref_invertible():
    # Hand elimination: [[2,1],[1,1]] -> [[1,1/2],[0,1/2]] -> identity.
    reduced, pivots = rref(Matrix.from_rows([[2, 1], [1, 1]]))
    assert pivots == (0, 1)
    assert reduced == Matrix.identity(2)


def test_kernel_proportional_rows():
    assert kernel_basis(Matrix.from_rows([[1, 2], [2, 4]])) == [vec(-2, 1)]


def test_kernel_identity_empty():
    assert kernel_basis(Matrix.identity(2)) == []


def test_kernel_of_empty_matrix_is_standard_basis():
    m = Matrix(0, 3, ())
    assert kernel_basis(m) == [vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1)]


def test_solve_scalar():
    assert solve(Matrix.from_rows([[2]]), [3]) == (Fraction(3, 2),)


def test_solve_inconsistent():
    assert solve(Matrix.from_rows([[1], [0]]), [0, 1]) is None


def test_solve_particular_solution_has_zero_free_coordinates():
    assert solve(Matrix.from_rows([[1, 1]]), [5]) == vec(5, 0)


def test_in_span_multiple():
    assert in_span(vec(2, 4), [vec(1, 2)]) == (Fraction(2),)


def test_in_span_absent():
    assert in_span(vec(1, 0), [vec(0, 1)]) is None


def test_in_span_empty_combination():
    assert in_span(vec(0, 0), []) == ()


small_fractions = st.fractions(
    min_value=-3, max_value=3, max_denominator=4
)


@st.composite
def matrices(draw, max_dim=4):
    rows = draw(st.integers(min_value=0, max_value=max_dim))
    cols = draw(st.integers(min_value=0, max_value=max_dim))
    entries = draw(
        st.lists(small_fractions, min_size=rows * cols, max_size=rows * cols)
    )
    return Matrix(rows, cols, tuple(entries))


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_rank_nullity(m):
    assert rank(m) + len(kernel_basis(m)) == m.cols


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_rref_idempotent(m):
    reduced, pivots = rref(m)
    again, pivots2 = rref(reduced)
    assert again == reduced
    assert pivots2 == pivots


@given(matrices(), st.data())
@settings(max_examples=150, deadline=None)
def test_solve_is_exact_when_consistent(m, data):
    x = data.draw(
        st.lists(small_fractions, min_size=m.cols, max_size=m.cols)
    )
    b = m.mul_vec(tuple(x))
    found = solve(m, b)
    assert found is not None
    assert m.mul_vec(found) == b


@given(matrices())
@settings(max_examples=100, deadline=None)
def test_kernel_vectors_are_in_kernel(m):
    for v in kernel_basis(m):
        assert m.mul_vec(v) == (Fraction(0),) * m.rows


@given(matrices())
@settings(max_examples=100, deadline=None)
def test_pivot_columns_strictly_increasing(m):
    _, pivots = rref(m)
    assert all(a < b for a, b in zip(pivots, pivots[1:]))


def test_rejects_wrong_entry_count():
    with pytest.raises(ValueError):
        Matrix(2, 2, (Fraction(0),))
