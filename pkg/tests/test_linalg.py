"""Exact linear algebra substrate: rank, kernels, canonical subspaces."""

import random
from fractions import Fraction

import pytest

from genpi.errors import DimensionMismatch
from genpi.linalg import RatMatrix, Subspace, left_kernel_basis, rank, solve_right, subspace_ops


def naive_rref(rows):
    """Independent textbook reduced row echelon over Fractions (test oracle)."""
    rows = [[Fraction(x) for x in r] for r in rows]
    if not rows:
        return []
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return [row for row in rows if any(x != 0 for x in row)]


def naive_rank(rows):
    return len(naive_rref(rows))


def test_rank_identity():
    assert rank(RatMatrix.identity(3)) == 3


def test_rank_all_ones():
    assert rank(RatMatrix.from_rows([[1, 1], [1, 1]])) == 1


def test_rank_hand_elimination():
    # rows (1,2),(2,4),(0,1): second is twice the first -> rank 2
    m = RatMatrix.from_rows([[1, 2], [2, 4], [0, 1]])
    assert m.rank() == 2
    assert naive_rank([[1, 2], [2, 4], [0, 1]]) == 2


def test_left_kernel_identity_is_zero():
    assert left_kernel_basis(RatMatrix.identity(3)).dim == 0


def test_left_kernel_zero_matrix_is_full():
    k = left_kernel_basis(RatMatrix.zeros(2, 3))
    assert k == Subspace.full(2)


def test_left_kernel_repeated_row():
    k = left_kernel_basis(RatMatrix.from_rows([[1, 0], [1, 0]]))
    assert k.basis == ((Fraction(1), Fraction(-1)),)


def test_subspace_sum_of_axes():
    e1 = Subspace.from_vectors(3, [[1, 0, 0]])
    e2 = Subspace.from_vectors(3, [[0, 1, 0]])
    s = subspace_ops(e1, e2, "sum")
    assert s == Subspace.from_vectors(3, [[1, 0, 0], [0, 1, 0]])


def test_subspace_intersection():
    a = Subspace.from_vectors(3, [[1, 0, 0], [0, 1, 0]])
    b = Subspace.from_vectors(3, [[0, 1, 0], [0, 0, 1]])
    assert subspace_ops(a, b, "intersection") == Subspace.from_vectors(3, [[0, 1, 0]])


def test_full_space_contains_everything():
    full = Subspace.full(4)
    rng = random.Random(7)
    vecs = [[Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(4)] for _ in range(3)]
    assert subspace_ops(full, Subspace.from_vectors(4, vecs), "contains")


def test_subspace_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        Subspace.full(2).sum(Subspace.full(3))


def test_rank_equals_transpose_rank_randomized():
    rng = random.Random(20240901)
    for _ in range(25):
        nr, nc = rng.randint(1, 6), rng.randint(1, 6)
        rows = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(nc)] for _ in range(nr)]
        m = RatMatrix.from_rows(rows)
        assert m.rank() == m.transpose().rank() == naive_rank(rows)


def test_kernel_dim_plus_rank_is_rows():
    rng = random.Random(99)
    for _ in range(25):
        nr, nc = rng.randint(1, 6), rng.randint(1, 6)
        rows = [[rng.randint(-3, 3) for _ in range(nc)] for _ in range(nr)]
        m = RatMatrix.from_rows(rows)
        k = m.left_kernel_basis()
        assert k.dim + m.rank() == nr
        # every kernel vector annihilates the matrix
        for v in k.basis:
            assert all(x == 0 for x in m.vecmat(v))


def test_canonical_form_is_basis_independent():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(2, 5)
        k = rng.randint(1, n)
        vecs = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(k)]
        s = Subspace.from_vectors(n, vecs)
        # apply a random invertible change of generating set
        mixed = []
        for _ in range(k + 2):
            coeffs = [Fraction(rng.randint(-3, 3)) for _ in range(k)]
            mixed.append([sum(c * Fraction(v[j]) for c, v in zip(coeffs, vecs)) for j in range(n)])
        s2 = Subspace.from_vectors(n, mixed)
        assert s.contains(s2)
        if s2.dim == s.dim:
            assert s.basis == s2.basis


def test_modular_law_of_dimensions():
    rng = random.Random(41)
    for _ in range(20):
        n = rng.randint(2, 6)
        a = Subspace.from_vectors(n, [[rng.randint(-2, 2) for _ in range(n)] for _ in range(rng.randint(1, n))])
        b = Subspace.from_vectors(n, [[rng.randint(-2, 2) for _ in range(n)] for _ in range(rng.randint(1, n))])
        assert a.dim + b.dim == a.sum(b).dim + a.intersection(b).dim


def test_solve_right():
    m = RatMatrix.from_rows([[1, 2], [3, 4]])
    x = solve_right(m, [5, 6])
    assert x is not None
    assert m.matvec(x) == [Fraction(5), Fraction(6)]
    assert solve_right(RatMatrix.from_rows([[1, 0], [2, 0]]), [1, 1]) is None


def test_rref_matches_oracle_randomized():
    rng = random.Random(123)
    for _ in range(20):
        nr, nc = rng.randint(1, 5), rng.randint(1, 5)
        rows = [[rng.randint(-3, 3) for _ in range(nc)] for _ in range(nr)]
        s = Subspace.from_vectors(nc, rows)
        oracle = naive_rref(rows)
        assert [list(b) for b in s.basis] == oracle
