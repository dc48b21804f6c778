from fractions import Fraction
from itertools import permutations
from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxalg.exact import (Matrix, column_hnf, determinant, integer_kernel,
                          integer_kernel_with_congruences, inverse, kernel_basis,
                          left_kernel_basis, primitive, rank, rref, smith_normal_form,
                          solve, solve_integer)

small = st.integers(-4, 4)


@st.composite
def int_matrices(draw, max_rows=4, max_cols=5):
    n = draw(st.integers(1, max_rows))
    m = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(small, min_size=m, max_size=m), min_size=n, max_size=n))
    return Matrix(rows, m)


@st.composite
def square(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    rows = draw(st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))
    return Matrix(rows, n)


def leibniz(M):
    n = M.rows
    total = 0
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        total += (-1) ** inv * prod(M[i, p[i]] for i in range(n))
    return total


def test_rref_known():
    R, pivots, r = rref(Matrix([[2, 4, 1], [1, 2, 0]], 3))
    assert r == 2 and list(pivots) == [0, 2]
    assert R.tolist() == [[1, 2, 0], [0, 0, 1]]


def test_empty_shapes():
    E = Matrix([], 3)
    assert E.shape == (0, 3)
    assert rank(E) == 0
    assert kernel_basis(E).shape == (3, 3)


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_rank_nullity(M):
    K = kernel_basis(M)
    assert rank(M) + K.cols == M.cols
    assert (M @ K).is_zero()
    assert rank(K) == K.cols


@settings(max_examples=100, deadline=None)
@given(int_matrices())
def test_left_kernel(M):
    L = left_kernel_basis(M)
    assert rank(M) + L.cols == M.rows
    assert (L.T @ M).is_zero()


@settings(max_examples=100, deadline=None)
@given(square())
def test_determinant_matches_leibniz(M):
    assert determinant(M) == leibniz(M)


@settings(max_examples=100, deadline=None)
@given(square())
def test_inverse(M):
    if leibniz(M) == 0:
        with pytest.raises((ZeroDivisionError, ValueError)):
            inverse(M)
    else:
        assert inverse(M) @ M == Matrix.identity(M.rows)


@settings(max_examples=100, deadline=None)
@given(int_matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve(M, x):
    b = M.apply(x[:M.cols])
    sol = solve(M, b)
    assert sol is not None
    assert list(M.apply(sol)) == list(b)


def test_solve_inconsistent():
    assert solve(Matrix([[1, 1], [1, 1]], 2), [1, 2]) is None


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_smith_normal_form(M):
    U, D, V = smith_normal_form(M)
    assert U @ M @ V == D
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    diag = [D[i, i] for i in range(min(D.rows, D.cols))]
    for i in range(D.rows):
        for j in range(D.cols):
            if i != j:
                assert D[i, j] == 0
    assert all(d >= 0 for d in diag)
    nz = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert len(nz) == rank(M)


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_column_hnf(M):
    H, V = column_hnf(M)
    assert M @ V == H
    assert abs(determinant(V)) == 1


@settings(max_examples=100, deadline=None)
@given(int_matrices())
def test_integer_kernel_saturated(M):
    K = integer_kernel(M)
    assert K.cols == M.cols - rank(M)
    assert (M @ K).is_zero()
    if K.cols:
        # saturation: the gcd of maximal minors is 1
        _, D, _ = smith_normal_form(K)
        assert all(D[i, i] == 1 for i in range(K.cols))


def test_integer_kernel_with_congruences():
    # m1 + m2 = 0 over Z and m1 = 0 mod 3
    K = integer_kernel_with_congruences(Matrix([[1, 1]], 2), Matrix([[1, 0]], 2), [3])
    assert K.cols == 1
    v = K.column(0)
    assert v[0] + v[1] == 0 and v[0] % 3 == 0 and abs(v[0]) == 3


@settings(max_examples=100, deadline=None)
@given(int_matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_integer(M, x):
    b = M.apply(x[:M.cols])
    z = solve_integer(M, b)
    assert z is not None and list(M.apply(z)) == list(b)
    assert all(isinstance(t, int) for t in z)


def test_solve_integer_none():
    assert solve_integer(Matrix([[2]], 1), [1]) is None


def test_primitive():
    assert primitive((4, -6, 2)) == ((2, -3, 1), 2)
    assert primitive((0, 0)) == ((0, 0), 0)


def test_fraction_entries():
    M = Matrix([[Fraction(1, 2), 1], [1, 2]], 2)
    assert determinant(M) == 0
    assert rank(M) == 1
