"""Explicit extremal polynomial systems and the Veronese line-containment check."""

import logging
from dataclasses import dataclass, field
from math import comb
from typing import Optional, Sequence

import numpy as np

from bounds import tbc_simplified
from errors import HypothesisViolated, RankOutOfRange, SizeOverflow, UsageError
from gf import FieldSpec
from linalg import rank
from poly import (
    HomogPoly,
    coefficient_vector,
    count_projective_zeros,
    enumerate_monomials,
    evaluation_matrix,
    linear_form,
    monomial_poly,
    multiply,
    product,
)
from pspace import DEFAULT_POINT_CAP, normalize_rows, p_k, projective_point_array

logger = logging.getLogger(__name__)


@dataclass
class WitnessSystem:
    """r linearly independent forms of degree d with a verified common-zero count."""
    F: FieldSpec
    m: int
    polys: list[HomogPoly]
    claimed_count: int
    construction: str
    verified: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def degree(self) -> int:
        return self.polys[0].degree

    @property
    def r(self) -> int:
        return len(self.polys)


def verify_witness(W: WitnessSystem) -> WitnessSystem:
    """Check independence and recount the zeros; raises HypothesisViolated on mismatch."""
    if not W.polys:
        raise UsageError("a witness needs at least one polynomial")
    d = W.polys[0].degree
    if any(P.degree != d for P in W.polys):
        raise UsageError("witness polynomials must share one degree")
    basis = enumerate_monomials(W.m, d)
    coeffs = np.array([coefficient_vector(P, basis) for P in W.polys], dtype=np.int64)
    if rank(W.F, coeffs) != len(W.polys):
        raise HypothesisViolated(f"{W.construction} polynomials are linearly dependent")
    count, _ = count_projective_zeros(W.F, W.polys, W.m)
    if count != W.claimed_count:
        raise HypothesisViolated(f"{W.construction} claims {W.claimed_count} common zeros, counted {count}")
    W.verified = True
    logger.debug(f"{W.construction} over {W.F}: {count} common zeros verified")
    return W


def _scalars(F: FieldSpec) -> list[int]:
    """Nonzero elements in encoded order, then 0."""
    return list(range(1, F.q)) + [0]


def build_pencil_witness(F: FieldSpec, d: int, m: int, r: int) -> WitnessSystem:
    """r forms sharing the factor G = prod_j (x_1 - a_j x_0) of degree d - 1.

    F_1 = (x_1 - b x_0) G, F_i = x_i G for 2 <= i <= min(r, m), and x_0 G when
    r = m + 1. Zeros: d - 1 hyperplanes through x_0 = x_1 = 0 plus the part
    of the linear space V(x_1 - b x_0, x_2, ..., x_r) off them.
    """
    if m < 1:
        raise UsageError(f"need m >= 1, got m={m}")
    if not 1 <= r <= m + 1:
        raise RankOutOfRange(f"pencil witness needs 1 <= r <= m+1 = {m + 1}, got r={r}")
    if not 1 <= d <= F.q:
        raise HypothesisViolated(f"pencil witness needs d distinct scalars: 1 <= d <= q = {F.q}, got d={d}")
    nvars = m + 1
    scalars = _scalars(F)
    alphas, beta = scalars[:d - 1], scalars[d - 1]

    def x1_minus(c: int) -> HomogPoly:
        coeffs = [0] * nvars
        coeffs[0], coeffs[1] = F.neg(c), 1
        return linear_form(F, coeffs)

    G = product(F, [x1_minus(a) for a in alphas], nvars)
    factors = [x1_minus(beta)]
    for i in range(2, min(r, m) + 1):
        factors.append(monomial_poly(F, [1 if j == i else 0 for j in range(nvars)]))
    if r == m + 1:
        factors.append(monomial_poly(F, [1] + [0] * m))
    polys = [multiply(F, H, G) for H in factors]
    W = WitnessSystem(F, m, polys, tbc_simplified(F.q, d, m, r), "pencil")
    return verify_witness(W)


def build_five_quadrics_witness(F: FieldSpec) -> WitnessSystem:
    """x_0^2, x_0x_1, x_0x_2, x_0x_3, x_1x_2 in P^3: two lines through a point, 2q + 1 zeros."""
    exps = [(2, 0, 0, 0), (1, 1, 0, 0), (1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0)]
    W = WitnessSystem(F, 3, [monomial_poly(F, e) for e in exps], 2 * F.q + 1, "five-quadrics")
    if F.q <= 3:
        W.notes.append("q <= 3: outside the range d < q-1 where T_5(2,3) is conjectured")
    return verify_witness(W)


def custom_witness(F: FieldSpec, m: int, polys: Sequence[HomogPoly]) -> WitnessSystem:
    """Wrap user polynomials, counting their zeros."""
    count, _ = count_projective_zeros(F, polys, m)
    return verify_witness(WitnessSystem(F, m, list(polys), count, "custom"))


# -- Veronese varieties --------------------------------------------------------

@dataclass
class VeroneseImage:
    """Image of P^m(F_q) under the degree-d Veronese map, inside P^(k-1)."""
    F: FieldSpec
    m: int
    d: int
    k: int
    points: np.ndarray
    keys: np.ndarray = field(repr=False)

    @property
    def ambient_dimension(self) -> int:
        return self.k - 1

    def __len__(self) -> int:
        return int(self.points.shape[0])


def _row_keys(F: FieldSpec, rows: np.ndarray) -> np.ndarray:
    """Injective integer key of each row (base-q digits)."""
    keys = np.zeros(rows.shape[0], dtype=np.int64)
    for c in range(rows.shape[1]):
        keys = keys * F.q + rows[:, c]
    return keys


def veronese_image(F: FieldSpec, d: int, m: int, cap: Optional[int] = None) -> VeroneseImage:
    if d < 1:
        raise UsageError(f"need d >= 1, got d={d}")
    k = comb(m + d, d)
    if k * np.log2(F.q) >= 62:
        raise SizeOverflow(f"P^{k - 1}(F_{F.q}) is too large to key its points")
    source = projective_point_array(F, m, cap)
    if p_k(F.q, m) * k > (cap or DEFAULT_POINT_CAP):
        raise SizeOverflow(f"Veronese image of {p_k(F.q, m)} points in P^{k - 1} exceeds the cap")
    images = normalize_rows(F, evaluation_matrix(F, enumerate_monomials(m, d), source).T)
    keys = _row_keys(F, images)
    if np.unique(keys).size != keys.size:
        raise HypothesisViolated(f"degree-{d} Veronese map on P^{m}(F_{F.q}) is not injective")
    return VeroneseImage(F, m, d, k, images, keys)


@dataclass
class LineCheck:
    lines_found: int
    example: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None

    def to_dict(self) -> dict:
        example = [list(p) for p in self.example] if self.example else None
        return {"lines_found": self.lines_found, "example": example}


def veronese_line_check(V: VeroneseImage) -> LineCheck:
    """Count projective lines contained in the image.

    Each line is counted once, from the pair of its two lowest-index image
    points.
    """
    F = V.F
    order = np.argsort(V.keys)
    sorted_keys = V.keys[order]
    n = len(V)
    lines, example = 0, None
    for i in range(n - 1):
        P = V.points[i]
        Q = V.points[i + 1:]
        # q points P + lam Q (lam in GF(q)); the line's last point is Q itself
        member_index = np.empty((Q.shape[0], F.q), dtype=np.int64)
        inside = np.ones(Q.shape[0], dtype=bool)
        for lam in range(F.q):
            rows = normalize_rows(F, F.vadd(P[None, :], F.vmul(lam, Q)))
            keys = _row_keys(F, rows)
            pos = np.minimum(np.searchsorted(sorted_keys, keys), n - 1)
            hit = sorted_keys[pos] == keys
            inside &= hit
            member_index[:, lam] = np.where(hit, order[pos], -1)
        # lam = 0 is P itself, index i; the other points must all come after the pair
        others = member_index[:, 1:]
        js = np.arange(i + 1, n)
        canonical = inside & (others > js[:, None]).all(axis=1)
        found = int(canonical.sum())
        if found and example is None:
            j = int(js[np.flatnonzero(canonical)[0]])
            example = (tuple(int(c) for c in V.points[i]), tuple(int(c) for c in V.points[j]))
        lines += found
    logger.info(f"Veronese image of P^{V.m} degree {V.d} over {F}: {lines} lines")
    return LineCheck(lines, example)
