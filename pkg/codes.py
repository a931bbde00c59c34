"""Reed-Muller and projective Reed-Muller codes, their parameters and duals."""

import logging
from dataclasses import dataclass, field
from math import comb
from typing import Optional, Union

import numpy as np

from errors import DegreeDivisible, DegreeTooLarge, UsageError
from gf import FieldSpec
from linalg import as_matrix, eliminate_column, nullspace, rank, rref
from poly import enumerate_monomials, evaluation_matrix
from pspace import affine_point_array, p_k, projective_point_array

logger = logging.getLogger(__name__)


@dataclass
class CodeParams:
    """[n, k, dmin] of a code."""
    n: int
    k: int
    dmin: int

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "dmin": self.dmin}


@dataclass
class LinearCode:
    """A linear code given by a full-row-rank generator over GF(q).

    Column j of ``generator`` is the evaluation at ``column_points[j]``.
    ``kind``/``d``/``m`` are set for rm/prm constructions and let callers
    fall back to closed-form values.
    """
    F: FieldSpec
    generator: np.ndarray
    column_points: np.ndarray
    label: str
    kind: str = "raw"
    d: Optional[int] = None
    m: Optional[int] = None
    notes: list[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return int(self.generator.shape[1])

    @property
    def k(self) -> int:
        return int(self.generator.shape[0])

    def is_nondegenerate(self) -> bool:
        return bool(self.generator.any(axis=0).all())


def _check_degree(F: FieldSpec, d: int, m: int, top: int, what: str):
    if m < 1:
        raise UsageError(f"{what} needs m >= 1, got {m}")
    if not 1 <= d <= top:
        raise DegreeTooLarge(f"{what} over {F} with m={m} needs 1 <= d <= {top}, got d={d}")


def rm_code(F: FieldSpec, d: int, m: int, cap: Optional[int] = None) -> LinearCode:
    """RM_q(d, m): polynomials of degree <= d evaluated on A^m(F_q); needs d < q."""
    _check_degree(F, d, m, F.q - 1, "RM code")
    points = affine_point_array(F, m, cap)
    generator = evaluation_matrix(F, enumerate_monomials(m, d, "bounded"), points)
    return LinearCode(F, generator, points, f"RM_{F.q}({d},{m})", "rm", d, m)


def prm_code(F: FieldSpec, d: int, m: int, cap: Optional[int] = None) -> LinearCode:
    """PRM_q(d, m): degree-d forms evaluated at the normalized points of P^m(F_q)."""
    _check_degree(F, d, m, m * (F.q - 1), "PRM code")
    points = projective_point_array(F, m, cap)
    generator = evaluation_matrix(F, enumerate_monomials(m, d, "homogeneous"), points)
    notes = []
    if d >= F.q:
        generator = rref(F, generator)[0]
        notes.append(f"monomials dependent for d >= q; reduced to {generator.shape[0]} basis rows")
    return LinearCode(F, generator, points, f"PRM_{F.q}({d},{m})", "prm", d, m, notes)


def linear_code(F: FieldSpec, generator, label: str = "raw") -> LinearCode:
    """Wrap an arbitrary matrix, reducing it to a row basis."""
    G = rref(F, generator)[0]
    points = np.arange(G.shape[1], dtype=np.int64)[:, None]
    return LinearCode(F, G, points, label)


def dual_code(C: LinearCode) -> LinearCode:
    """The dual code, generated by the nullspace of C's generator."""
    H = nullspace(C.F, C.generator, C.n)
    return LinearCode(C.F, H, C.column_points, f"{C.label}^perp")


def _binom(a: int, b: int) -> int:
    if b < 0 or a < b:
        return 0
    return comb(a, b)


def prm_dimension(q: int, d: int, m: int) -> int:
    """Dimension of PRM_q(d, m) by the alternating binomial sum."""
    total = 0
    for t in range(1, d + 1):
        if (t - d) % (q - 1):
            continue
        for j in range(m + 2):
            total += (-1) ** j * comb(m + 1, j) * _binom(t - j * q + m, t - j * q)
    return total


def prm_params(F: FieldSpec, d: int, m: int) -> CodeParams:
    """[n, k, dmin] of PRM_q(d, m) from closed formulas."""
    q = F.q
    _check_degree(F, d, m, m * (q - 1), "PRM code")
    t, s = divmod(d - 1, q - 1)
    return CodeParams(n=p_k(q, m), k=prm_dimension(q, d, m), dmin=(q - s) * q ** (m - t - 1))


def rm_params(F: FieldSpec, d: int, m: int) -> CodeParams:
    """[n, k, dmin] of RM_q(d, m) for d < q."""
    _check_degree(F, d, m, F.q - 1, "RM code")
    return CodeParams(n=F.q ** m, k=comb(m + d, d), dmin=(F.q - d) * F.q ** (m - 1))


def prm_dual_degree(F: FieldSpec, d: int, m: int) -> int:
    """Degree d' with PRM_q(d, m)^perp = PRM_q(d', m)."""
    _check_degree(F, d, m, m * (F.q - 1), "PRM code")
    if d % (F.q - 1) == 0:
        raise DegreeDivisible(f"q-1 = {F.q - 1} divides d = {d}")
    return m * (F.q - 1) - d


@dataclass(frozen=True)
class NotFoundBelow:
    """No dependent column set of size <= limit exists."""
    limit: int

    def __str__(self) -> str:
        return f"> {self.limit}"


def _dependent_at(F: FieldSpec, R: np.ndarray, start: int, depth: int) -> bool:
    """True if some independent set of ``depth`` more columns (indices >= start)
    has a later column in its span."""
    if depth == 0:
        return bool((~R[start:].any(axis=1)).any())
    n = R.shape[0]
    for j in range(start, n - depth):
        if not R[j].any():
            continue
        if _dependent_at(F, eliminate_column(F, R, j), j + 1, depth - 1):
            return True
    return False


def dual_min_distance_via_columns(C: LinearCode, limit: int) -> Union[int, NotFoundBelow]:
    """Smallest w <= limit such that some w columns of the generator are dependent.

    Iterative deepening over independent column sets S in increasing index
    order; a circuit of size w is found as S of size w-1 plus a later column
    in span(S).
    """
    if limit < 1:
        raise UsageError(f"limit must be >= 1, got {limit}")
    R = C.generator.T.astype(np.int64)
    for w in range(1, limit + 1):
        if _dependent_at(C.F, R, 0, w - 1):
            logger.info(f"{C.label}: dual minimum distance {w}")
            return w
        logger.debug(f"{C.label}: no dependent set of {w} columns")
    return NotFoundBelow(limit)


def matrix_rank(F: FieldSpec, M) -> int:
    """Rank over GF(q)."""
    return rank(F, as_matrix(M))
