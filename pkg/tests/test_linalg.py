import numpy as np
import pytest

from gf import field_from_order, galois_field
from linalg import as_matrix, eliminate_column, matmul, nullspace, rank, rref


def test_rref_identity(gf4):
    R, pivots = rref(gf4, np.eye(3, dtype=np.int64))
    assert R.tolist() == np.eye(3, dtype=np.int64).tolist()
    assert pivots == [0, 1, 2]


def test_rref_scales_and_drops_dependent_rows(gf5):
    M = [[2, 4, 1], [4, 3, 2], [0, 0, 3]]
    R, pivots = rref(gf5, M)
    # row 2 is 2 * row 1
    assert pivots == [0, 2]
    assert R.tolist() == [[1, 2, 0], [0, 0, 1]]
    assert rank(gf5, M) == 2


def test_rank_of_empty_matrix(gf4):
    assert rank(gf4, []) == 0
    assert as_matrix([]).shape == (0, 0)


def test_nullspace_annihilates(gf4, rng):
    for _ in range(20):
        M = rng.integers(0, 4, size=(3, 6))
        N = nullspace(gf4, M)
        assert N.shape[0] == 6 - rank(gf4, M)
        assert not matmul(gf4, M, N.T).any()
        assert rank(gf4, N) == N.shape[0]


def test_nullspace_of_empty_matrix(gf4):
    assert nullspace(gf4, [], 3).tolist() == np.eye(3, dtype=np.int64).tolist()


def test_matmul(gf4):
    A = [[1, 2], [3, 0]]
    B = [[2, 1], [1, 1]]
    # [1*2 + 2*1, 1*1 + 2*1] = [2+2, 1+2] over GF(4)
    assert matmul(gf4, A, B).tolist() == [[0, 3], [1, 3]]


def test_eliminate_column_zeros_span(gf5):
    R = np.array([[1, 2], [2, 4], [0, 1], [3, 2]], dtype=np.int64)
    R2 = eliminate_column(gf5, R, 0)
    assert not R2[0].any()
    assert not R2[1].any()
    assert R2[2].any()
    assert R2[3].any()


@pytest.mark.parametrize("q, modulus", [(4, None), (8, None), (9, None), (9, (2, 2, 1)), (16, None), (25, None)])
def test_galois_field_matches_tables(q, modulus):
    F = field_from_order(q, modulus)
    GF = galois_field(F)
    assert GF.order == q
    a, b = np.meshgrid(np.arange(q), np.arange(q))
    a, b = a.ravel(), b.ravel()
    assert np.asarray(GF(a) * GF(b)).tolist() == F.vmul(a, b).tolist()
    assert np.asarray(GF(a) + GF(b)).tolist() == F.vadd(a, b).tolist()


def test_rank_and_nullspace_over_extension_field(rng):
    F = field_from_order(9)
    for _ in range(10):
        M = rng.integers(0, 9, size=(4, 7))
        N = nullspace(F, M)
        assert N.shape[0] == 7 - rank(F, M)
        assert not matmul(F, M, N.T).any()
