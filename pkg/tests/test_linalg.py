from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import rationals, vectors
from structurable import _exact as ex
from structurable.linalg import (
    AmbientMismatch, DimensionMismatch, NotInvertible, SingularGram, Subspace, dual_solve,
    format_subspace, intersect_sum, inverse, kernel, parse_subspace, rank, rref, solve,
)
from structurable.scalars import QuadField


def mats(rows, cols, height=5):
    return st.lists(vectors(cols, height), min_size=rows, max_size=rows).map(ex.matrix)


def low_rank(rows, cols):
    # products of thin factors give rank-deficient matrices often
    return st.tuples(mats(rows, 2), mats(2, cols)).map(lambda ab: ex.matmul(*ab))


def sympy_rref(M):
    R, piv = sympy.Matrix(M.tolist()).rref()
    rows = [[ex.normalize(ex.obj([Fraction(int(v.p), int(v.q))]))[0] for v in R.row(i)] for i in range(len(piv))]
    return rows, list(piv)


@given(st.one_of(mats(4, 5), low_rank(4, 5), mats(3, 3)))
def test_rref_matches_sympy(M):
    R, piv = rref(M)
    want, wpiv = sympy_rref(M)
    assert piv == wpiv
    assert R.tolist() == want


@given(st.one_of(mats(4, 6), low_rank(5, 6)))
def test_rank_nullity_and_kernel(M):
    K = kernel(M)
    assert rank(M) + K.dim == M.shape[1]
    for v in K.vectors():
        assert ex.is_zero(ex.matmul(M, v))


@given(low_rank(3, 6), low_rank(3, 6))
def test_dimension_formula(A, B):
    U, V = Subspace.span(A, 6), Subspace.span(B, 6)
    meet, join = intersect_sum(U, V)
    assert meet.dim + join.dim == U.dim + V.dim
    assert meet <= U and meet <= V and U <= join and V <= join


@given(mats(3, 5))
def test_annihilator_is_orthogonal_complement(A):
    U = Subspace.span(A, 5)
    Z = U.annihilator()
    assert U.dim + Z.dim == 5
    for u in U.vectors():
        for z in Z.vectors():
            assert ex.matmul(u, z) == 0


def test_subspace_equality_is_basis_independent():
    a = Subspace.span([ex.obj([1, 2, 0]), ex.obj([0, 1, 1])])
    b = Subspace.span([ex.obj([1, 3, 1]), ex.obj([2, 4, 0])])
    assert a == b and hash(a) == hash(b)
    assert a.contains(ex.obj([1, 1, -1])) and not a.contains(ex.obj([0, 0, 1]))


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        Subspace.full(3) + Subspace.full(4)
    with pytest.raises(DimensionMismatch):
        Subspace.span([ex.obj([1, 2])], 3)


@given(mats(3, 3), vectors(3))
def test_solve_and_inverse(A, b):
    if rank(A) < 3:
        with pytest.raises(NotInvertible):
            inverse(A)
        return
    x = solve(A, b)
    assert (ex.matmul(A, x) == ex.normalize(b)).all()
    assert (ex.matmul(A, inverse(A)) == ex.identity(3)).all()


def test_dual_solve():
    G = ex.matrix([[0, 1], [1, 0]])
    x = dual_solve(G, ex.obj([2, 3]))
    assert (ex.matmul(x, G) == ex.obj([2, 3])).all()
    with pytest.raises(SingularGram):
        dual_solve(ex.matrix([[1, 1], [1, 1]]), ex.obj([1, 0]))


def test_rref_over_quadratic_field():
    K = QuadField(2)
    w = K.sqrt
    M = ex.matrix([[w, 2], [1, w]])
    assert rank(M) == 1
    R, piv = rref(M)
    assert piv == [0] and R[0, 1] == w


@given(mats(3, 4))
def test_subspace_file_round_trip(A):
    S = Subspace.span(A, 4)
    assert parse_subspace(format_subspace(S)) == S


def test_subspace_file_errors():
    with pytest.raises(ValueError):
        parse_subspace("")
    with pytest.raises(DimensionMismatch):
        parse_subspace("3 1\n1 2\n")


@given(rationals())
def test_image_of_scaling(c):
    S = Subspace.span([ex.obj([1, 0, 2])])
    img = S.image(ex.scale(ex.identity(3), c))
    assert img.dim == (1 if c else 0)
