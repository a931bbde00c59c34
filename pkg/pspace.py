"""Affine and projective point sets over GF(q), hyperplanes, and p_k.

Point lists are in ascending lexicographic order of their encoded
coordinate vectors; that order is the column order of every generator
matrix and value-vector table built on top of them.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from errors import SizeOverflow, UsageError
from gf import FieldSpec

logger = logging.getLogger(__name__)

DEFAULT_POINT_CAP = 10 ** 7


@dataclass(frozen=True, order=True)
class ProjPoint:
    """Normalized representative of a point of P^m: first nonzero coordinate is 1."""
    coords: tuple[int, ...]

    def __post_init__(self):
        lead = next((c for c in self.coords if c != 0), None)
        if lead != 1:
            raise UsageError(f"{self.coords} is not a normalized projective point")

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coords)


@dataclass(frozen=True, order=True)
class AffPoint:
    """A point of A^m(F_q)."""
    coords: tuple[int, ...]

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coords)


def p_k(q: int, k: int) -> int:
    """Number of points of P^k(F_q): q^k + ... + q + 1, and 0 for k < 0."""
    if k < 0:
        return 0
    return (q ** (k + 1) - 1) // (q - 1)


def lex_grid(q: int, length: int) -> np.ndarray:
    """All q^length vectors over {0..q-1} in ascending lexicographic order."""
    if length == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.indices((q,) * length, dtype=np.int64).reshape(length, -1).T


def _check_cap(count: int, cap: Optional[int], what: str):
    cap = DEFAULT_POINT_CAP if cap is None else cap
    if count > cap:
        raise SizeOverflow(f"{what} has {count} points, above the cap of {cap}")


def projective_point_array(F: FieldSpec, m: int, cap: Optional[int] = None) -> np.ndarray:
    """Normalized points of P^m(F_q) as a (p_m, m+1) array."""
    if m < 0:
        raise UsageError(f"projective dimension must be >= 0, got {m}")
    _check_cap(p_k(F.q, m), cap, f"P^{m}(F_{F.q})")
    blocks = []
    for lead in range(m, -1, -1):
        tail = lex_grid(F.q, m - lead)
        block = np.zeros((tail.shape[0], m + 1), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = tail
        blocks.append(block)
    return np.vstack(blocks)


def affine_point_array(F: FieldSpec, m: int, cap: Optional[int] = None) -> np.ndarray:
    """Points of A^m(F_q) as a (q^m, m) array."""
    if m < 0:
        raise UsageError(f"affine dimension must be >= 0, got {m}")
    _check_cap(F.q ** m, cap, f"A^{m}(F_{F.q})")
    return lex_grid(F.q, m)


def enumerate_projective_points(F: FieldSpec, m: int, cap: Optional[int] = None) -> list[ProjPoint]:
    return [ProjPoint(tuple(int(c) for c in row)) for row in projective_point_array(F, m, cap)]


def enumerate_affine_points(F: FieldSpec, m: int, cap: Optional[int] = None) -> list[AffPoint]:
    return [AffPoint(tuple(int(c) for c in row)) for row in affine_point_array(F, m, cap)]


def enumerate_hyperplanes(F: FieldSpec, m: int, cap: Optional[int] = None) -> list[ProjPoint]:
    """Hyperplanes of P^m as normalized coefficient vectors."""
    if m < 1:
        raise UsageError(f"hyperplanes need m >= 1, got {m}")
    return enumerate_projective_points(F, m, cap)


def as_point_array(points: Iterable) -> np.ndarray:
    """Stack ProjPoint/AffPoint objects (or plain sequences) into an int array."""
    rows = [p.coords if isinstance(p, (ProjPoint, AffPoint)) else tuple(p) for p in points]
    if not rows:
        return np.zeros((0, 0), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def dot_products(F: FieldSpec, X: np.ndarray, H: np.ndarray) -> np.ndarray:
    """Table of dot products over GF(q): entry (i, j) is X[i] . H[j]."""
    out = np.zeros((X.shape[0], H.shape[0]), dtype=np.int64)
    for c in range(X.shape[1]):
        out = F.vadd(out, F.vmul(X[:, c][:, None], H[:, c][None, :]))
    return np.asarray(out, dtype=np.int64)


def on_hyperplane(F: FieldSpec, point: Sequence[int], hyperplane: Sequence[int]) -> bool:
    total = 0
    for x, h in zip(point, hyperplane):
        total = F.add(total, F.mul(int(x), int(h)))
    return total == 0


def normalize_rows(F: FieldSpec, V: np.ndarray) -> np.ndarray:
    """Scale every nonzero row so that its first nonzero entry is 1."""
    V = np.asarray(V, dtype=np.int64)
    nonzero = V != 0
    has_lead = nonzero.any(axis=1)
    lead = V[np.arange(V.shape[0]), np.argmax(nonzero, axis=1)]
    scale = np.ones(V.shape[0], dtype=np.int64)
    scale[has_lead] = F.vinv(lead[has_lead])
    return np.asarray(F.vmul(scale[:, None], V), dtype=np.int64)


@dataclass(frozen=True)
class ZanellaCheck:
    """Outcome of the hyperplane-section bound |X| <= a q + 1."""
    size: int
    a: int
    bound: int
    holds: bool


def zanella_set_check(F: FieldSpec, X: Iterable, m: int) -> ZanellaCheck:
    """Compute a = max |X ∩ Π| over hyperplanes Π and test |X| <= a q + 1.

    ``holds`` is a theorem; a False result means a bug upstream.
    """
    points = as_point_array(X)
    size = points.shape[0]
    if size == 0:
        return ZanellaCheck(0, 0, 1, True)
    if points.shape[1] != m + 1:
        raise UsageError(f"points have {points.shape[1]} coordinates, expected {m + 1}")
    hyperplanes = projective_point_array(F, m)
    incidences = (dot_products(F, points, hyperplanes) == 0).sum(axis=0)
    a = int(incidences.max())
    bound = a * F.q + 1
    if size > bound:
        logger.error(f"hyperplane-section bound failed: |X|={size} > {bound}")
    return ZanellaCheck(size, a, bound, size <= bound)
