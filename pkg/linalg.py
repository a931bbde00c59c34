"""Linear algebra over GF(q) on numpy integer matrices.

Row reduction, rank, kernels and products go through galois FieldArrays built
on the field's own modulus; results come back as plain int64 arrays.
``eliminate_column`` stays on the lookup tables since the flat search calls it
once per visited node.
"""

from typing import Optional

import numpy as np

from gf import FieldSpec, galois_field


def as_matrix(M) -> np.ndarray:
    """Copy M into a 2-D int64 array (an empty list becomes a 0x0 matrix)."""
    A = np.array(M, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else A.reshape(0, 0)
    return A


def _plain(A) -> np.ndarray:
    return np.asarray(A.view(np.ndarray), dtype=np.int64)


def rref(F: FieldSpec, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    A = as_matrix(M)
    if A.size == 0:
        return A[:0], []
    R = _plain(galois_field(F)(A).row_reduce())
    nonzero = R.any(axis=1)
    R = R[nonzero]
    pivots = [int(np.flatnonzero(row)[0]) for row in R]
    return R, pivots


def rank(F: FieldSpec, M) -> int:
    A = as_matrix(M)
    if A.size == 0:
        return 0
    return int(np.linalg.matrix_rank(galois_field(F)(A)))


def nullspace(F: FieldSpec, M, ncols: Optional[int] = None) -> np.ndarray:
    """Basis (in RREF) of {x : M x = 0}."""
    A = as_matrix(M)
    if not A.size:
        k = A.shape[1] if A.ndim == 2 and A.shape[1] else ncols
        return np.eye(k, dtype=np.int64)
    N = _plain(galois_field(F)(A).null_space())
    if N.shape[0] == 0:
        return np.zeros((0, A.shape[1]), dtype=np.int64)
    return rref(F, N)[0]


def matmul(F: FieldSpec, A, B) -> np.ndarray:
    """Matrix product over GF(q)."""
    A, B = as_matrix(A), as_matrix(B)
    if A.size == 0 or B.size == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    GF = galois_field(F)
    return _plain(GF(A) @ GF(B))


def eliminate_column(F: FieldSpec, R: np.ndarray, j: int) -> np.ndarray:
    """Reduce every row of R against row j (which must be nonzero).

    R holds, per point, the residue of its column after projecting out the
    span of previously chosen columns; afterwards row j and every row in the
    span of the chosen set plus j is zero.
    """
    pivot_row = R[j]
    c = int(np.flatnonzero(pivot_row)[0])
    factors = F.vmul(R[:, c], F.inv(int(pivot_row[c])))
    return np.asarray(F.vsub(R, F.vmul(factors[:, None], pivot_row[None, :])), dtype=np.int64)
