import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mgreduce.errors import GuardExceeded
from mgreduce.linalg import (
    BinaryMatrix,
    BinarySubspace,
    enumerate_subspaces,
    enumerate_vectors,
    gaussian_binomial,
    intersect,
    nullspace,
    rank,
    row_space_equal,
    rref,
    solve_combination,
)

from oracles import binary_subspaces


@st.composite
def matrices(draw, max_rows=7, max_cols=9):
    cols = draw(st.integers(0, max_cols))
    nrows = draw(st.integers(0, max_rows))
    rows = draw(st.lists(st.integers(0, (1 << cols) - 1), min_size=nrows, max_size=nrows))
    return BinaryMatrix(tuple(rows), cols)


def span_brute(rows):
    out = {0}
    for r in rows:
        out |= {x ^ r for x in out}
    return out


def test_rref_examples():
    I3 = BinaryMatrix.from_bits([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert rref(I3) == (I3, 3)
    M, k = rref(BinaryMatrix.from_bits([[1, 1], [1, 1]]))
    assert k == 1 and M.to_bits() == [[1, 1], [0, 0]]
    Z = BinaryMatrix.from_bits([[0, 0], [0, 0]])
    assert rref(Z) == (Z, 0)


def test_row_space_equal_examples():
    M = BinaryMatrix.from_bits([[1, 0, 1], [0, 1, 1], [1, 1, 1]])
    assert row_space_equal(M, BinaryMatrix(M.rows[::-1], 3))
    summed = BinaryMatrix((M.rows[0], M.rows[1], M.rows[0] ^ M.rows[2]), 3)
    assert row_space_equal(M, summed)
    assert not row_space_equal(BinaryMatrix.from_bits([[1, 0]]), BinaryMatrix.from_bits([[0, 1]]))
    with pytest.raises(ValueError):
        row_space_equal(BinaryMatrix((1,), 2), BinaryMatrix((1,), 3))


def test_nullspace_examples():
    assert nullspace(BinaryMatrix.from_bits([[1, 1]])).basis == (0b11,)
    assert nullspace(BinaryMatrix.from_bits([[1, 0], [0, 1]])).dim == 0
    assert nullspace(BinaryMatrix.from_bits([[0, 0, 0]])).dim == 3


def test_intersect_examples():
    U = BinarySubspace.full(2)
    V = BinarySubspace.span([0b11], 2)
    assert intersect(U, V) == V
    assert intersect(V, V) == V
    assert intersect(BinarySubspace.span([0b01], 2), BinarySubspace.span([0b10], 2)).dim == 0
    with pytest.raises(ValueError):
        intersect(U, BinarySubspace.full(3))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rref_properties(M):
    R, k = rref(M)
    assert rref(R) == (R, k)
    assert span_brute(R.rows) == span_brute(M.rows)
    assert k == rank(M.transpose())
    pivots = [(row & -row).bit_length() - 1 for row in R.rows[:k]]
    assert pivots == sorted(set(pivots))
    for p, row in zip(pivots, R.rows[:k]):
        assert sum((other >> p) & 1 for other in R.rows[:k]) == 1


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_nullspace_rank_nullity(M):
    K = nullspace(M)
    assert K.dim + rank(M) == M.cols
    for x in K.basis:
        assert all((row & x).bit_count() % 2 == 0 for row in M.rows)


@settings(max_examples=150, deadline=None)
@given(matrices(max_cols=7), matrices(max_cols=7))
def test_modular_law(A, B):
    n = min(A.cols, B.cols)
    mask = (1 << n) - 1
    U = BinarySubspace.span([r & mask for r in A.rows], n)
    V = BinarySubspace.span([r & mask for r in B.rows], n)
    W = intersect(U, V)
    assert W.dim + (U + V).dim == U.dim + V.dim
    assert set(enumerate_vectors(W)) == set(enumerate_vectors(U)) & set(enumerate_vectors(V))


def test_enumerate_vectors():
    assert list(enumerate_vectors(BinarySubspace.zero(3))) == [0]
    assert sorted(enumerate_vectors(BinarySubspace.span([0b11], 2))) == [0, 0b11]
    S = BinarySubspace.full(10)
    vecs = list(enumerate_vectors(S))
    assert len(vecs) == 1024 == len(set(vecs))
    with pytest.raises(GuardExceeded):
        enumerate_vectors(BinarySubspace.full(25))


@pytest.mark.parametrize("m, d, count", [(2, 1, 3), (3, 2, 7), (3, 1, 7), (4, 2, 35), (2, 0, 1)])
def test_gaussian_binomial_matches_brute_force(m, d, count):
    assert gaussian_binomial(m, d) == count == len(binary_subspaces(m, d))


@pytest.mark.parametrize("m, d", [(2, 1), (3, 2), (4, 2), (4, 1), (3, 0), (3, 3)])
def test_enumerate_subspaces_exactly_once(m, d):
    # embed S in a larger ambient space through a non-trivial basis
    S = BinarySubspace.span([(0b101 << i) ^ (1 << (i + 4)) for i in range(m)], m + 6)
    assert S.dim == m
    subs = list(enumerate_subspaces(S, d))
    assert len(subs) == gaussian_binomial(m, d)
    assert len(set(subs)) == len(subs)
    for P in subs:
        assert P.dim == d and P.issubspace(S)


def test_enumerate_subspaces_guard():
    with pytest.raises(GuardExceeded):
        list(enumerate_subspaces(BinarySubspace.full(8), 4, guard=100))
    with pytest.raises(ValueError):
        list(enumerate_subspaces(BinarySubspace.full(2), 3))


def test_solve_combination():
    rows = [0b011, 0b110, 0b101]
    mask = solve_combination(0b101, rows)
    acc = 0
    for i, r in enumerate(rows):
        if (mask >> i) & 1:
            acc ^= r
    assert acc == 0b101
    assert solve_combination(0b111, rows) is None


def test_text_round_trip():
    M = BinaryMatrix.from_bits([[1, 0, 1], [0, 0, 1]])
    assert M.to_text() == "101\n001"
    assert BinaryMatrix.from_text(M.to_text()) == M
    with pytest.raises(ValueError):
        BinaryMatrix.from_text("102")


def test_invariants_enforced():
    with pytest.raises(ValueError):
        BinaryMatrix((0b100,), 2)
    with pytest.raises(ValueError):
        BinarySubspace((0b11, 0b01), 2)


def test_transpose_involution():
    for bits in itertools.product((0, 1), repeat=6):
        M = BinaryMatrix.from_bits([bits[:3], bits[3:]])
        assert M.transpose().transpose() == M
