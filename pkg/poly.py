"""Monomials, polynomials over GF(q), evaluation tables and zero counting.

Polynomials are sparse: a map from exponent tuples to nonzero encoded field
elements. For search work a polynomial is precompiled once into its value
vector over a fixed point list and never evaluated monomial by monomial again.
"""

import logging
from dataclasses import dataclass, field
from math import comb
from typing import Iterator, Optional, Sequence, Union

import numpy as np

from errors import DimensionMismatch, RankOutOfRange, UsageError
from gf import FieldSpec
from pspace import AffPoint, ProjPoint, affine_point_array, as_point_array, projective_point_array

logger = logging.getLogger(__name__)

Monomial = tuple[int, ...]


def _clean_terms(F: Optional[FieldSpec], terms: dict) -> dict[Monomial, int]:
    out = {}
    for mono, coeff in terms.items():
        coeff = int(coeff)
        if F is not None and not 0 <= coeff < F.q:
            raise UsageError(f"coefficient {coeff} is not an element of {F}")
        if coeff:
            out[tuple(int(e) for e in mono)] = coeff
    return out


@dataclass
class HomogPoly:
    """Homogeneous polynomial of degree ``degree`` in ``nvars`` variables x_0..x_m."""
    nvars: int
    degree: int
    terms: dict[Monomial, int] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = _clean_terms(None, self.terms)
        for mono in self.terms:
            if len(mono) != self.nvars:
                raise DimensionMismatch(f"monomial {mono} has {len(mono)} exponents, expected {self.nvars}")
            if sum(mono) != self.degree or min(mono) < 0:
                raise UsageError(f"monomial {mono} is not of degree {self.degree}")

    @property
    def is_zero(self) -> bool:
        return not self.terms


@dataclass
class AffinePoly:
    """Polynomial of total degree at most ``max_degree`` in ``nvars`` variables x_1..x_m."""
    nvars: int
    max_degree: int
    terms: dict[Monomial, int] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = _clean_terms(None, self.terms)
        for mono in self.terms:
            if len(mono) != self.nvars:
                raise DimensionMismatch(f"monomial {mono} has {len(mono)} exponents, expected {self.nvars}")
            if sum(mono) > self.max_degree or min(mono) < 0:
                raise UsageError(f"monomial {mono} exceeds degree {self.max_degree}")

    @property
    def is_zero(self) -> bool:
        return not self.terms


Poly = Union[HomogPoly, AffinePoly]


# -- monomial orders ---------------------------------------------------------

def _compositions(total: int, parts: int) -> Iterator[Monomial]:
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def _bounded(budget: int, parts: int) -> Iterator[Monomial]:
    if parts == 0:
        yield ()
        return
    for head in range(budget, -1, -1):
        for tail in _bounded(budget - head, parts - 1):
            yield (head,) + tail


def enumerate_monomials(m: int, d: int, mode: str = "homogeneous") -> list[Monomial]:
    """Monomials in descending lexicographic order of exponent vectors.

    ``homogeneous``: m+1 variables, total degree exactly d.
    ``bounded``: m variables, total degree at most d.
    Both lists have C(m+d, d) entries.
    """
    if m < 0 or d < 0:
        raise UsageError(f"need m >= 0 and d >= 0, got m={m}, d={d}")
    if mode == "homogeneous":
        return list(_compositions(d, m + 1))
    if mode == "bounded":
        return list(_bounded(d, m))
    raise UsageError(f"unknown monomial mode '{mode}'")


def composition_count(total: int, parts: int) -> int:
    """Number of compositions of ``total`` into ``parts`` nonnegative parts."""
    if parts == 0:
        return 1 if total == 0 else 0
    return comb(total + parts - 1, parts - 1)


def unrank_composition(r: int, d: int, parts: int) -> Monomial:
    """The r-th (1-based) composition of d into ``parts`` parts, descending lex."""
    if parts < 1:
        raise UsageError(f"need at least one part, got {parts}")
    total = composition_count(d, parts)
    if not 1 <= r <= total:
        raise RankOutOfRange(f"rank {r} outside 1..{total} for compositions of {d} into {parts} parts")
    rank = r - 1
    remaining = d
    out = []
    for slot in range(parts - 1):
        for head in range(remaining, -1, -1):
            block = composition_count(remaining - head, parts - slot - 1)
            if rank < block:
                out.append(head)
                remaining -= head
                break
            rank -= block
    out.append(remaining)
    return tuple(out)


# -- evaluation --------------------------------------------------------------

def _point_coords(point) -> tuple[int, ...]:
    if isinstance(point, (ProjPoint, AffPoint)):
        return point.coords
    return tuple(int(c) for c in point)


def evaluate(F: FieldSpec, P: Poly, point) -> int:
    """Value of P at a point, as an encoded field element."""
    coords = _point_coords(point)
    if len(coords) != P.nvars:
        raise DimensionMismatch(f"point has {len(coords)} coordinates, polynomial has {P.nvars} variables")
    total = 0
    for mono, coeff in P.terms.items():
        term = coeff
        for x, e in zip(coords, mono):
            if e:
                term = F.mul(term, F.pow(x, e))
        total = F.add(total, term)
    return total


def _power_table(F: FieldSpec, max_exp: int) -> np.ndarray:
    """pw[e, x] = x^e, with 0^0 = 1."""
    elems = F.elements()
    pw = np.ones((max_exp + 1, F.q), dtype=np.int64)
    for e in range(1, max_exp + 1):
        pw[e] = F.vmul(pw[e - 1], elems)
    return pw


def evaluation_matrix(F: FieldSpec, basis: Sequence[Monomial], points) -> np.ndarray:
    """Row i, column j: the i-th monomial evaluated at the j-th point."""
    X = points if isinstance(points, np.ndarray) else as_point_array(points)
    if not len(basis) or X.shape[0] == 0:
        raise UsageError("evaluation matrix needs a nonempty basis and point list")
    B = np.array(basis, dtype=np.int64)
    if B.shape[1] != X.shape[1]:
        raise DimensionMismatch(f"monomials have {B.shape[1]} exponents, points have {X.shape[1]} coordinates")
    pw = _power_table(F, int(B.max()))
    out = np.ones((B.shape[0], X.shape[0]), dtype=np.int64)
    for v in range(B.shape[1]):
        factor = pw[B[:, v]][:, X[:, v]]
        out = np.asarray(F.vmul(out, factor), dtype=np.int64)
    return out


def value_vectors(F: FieldSpec, polys: Sequence[Poly], points) -> np.ndarray:
    """One row per polynomial: its values over ``points``."""
    X = points if isinstance(points, np.ndarray) else as_point_array(points)
    out = np.zeros((len(polys), X.shape[0]), dtype=np.int64)
    for i, P in enumerate(polys):
        if P.is_zero:
            continue
        if P.nvars != X.shape[1]:
            raise DimensionMismatch(f"polynomial has {P.nvars} variables, points have {X.shape[1]} coordinates")
        monos = list(P.terms)
        E = evaluation_matrix(F, monos, X)
        coeffs = np.array([P.terms[mono] for mono in monos], dtype=np.int64)
        row = np.zeros(X.shape[0], dtype=np.int64)
        for c, erow in zip(coeffs, E):
            row = np.asarray(F.vadd(row, F.vmul(int(c), erow)), dtype=np.int64)
        out[i] = row
    return out


def _common_zero_mask(F: FieldSpec, polys: Sequence[Poly], X: np.ndarray) -> np.ndarray:
    if not polys:
        return np.ones(X.shape[0], dtype=bool)
    return ~value_vectors(F, polys, X).any(axis=0)


def count_projective_zeros(
    F: FieldSpec, polys: Sequence[HomogPoly], m: int, cap: Optional[int] = None
) -> tuple[int, list[ProjPoint]]:
    """Common zeros of homogeneous polynomials among the normalized points of P^m."""
    for P in polys:
        if not isinstance(P, HomogPoly):
            raise UsageError("projective zero counting needs homogeneous polynomials")
        if P.nvars != m + 1:
            raise DimensionMismatch(f"polynomial has {P.nvars} variables, P^{m} needs {m + 1}")
    X = projective_point_array(F, m, cap)
    mask = _common_zero_mask(F, polys, X)
    zeros = [ProjPoint(tuple(int(c) for c in row)) for row in X[mask]]
    return len(zeros), zeros


def count_affine_zeros(F: FieldSpec, polys: Sequence[AffinePoly], m: int, cap: Optional[int] = None) -> int:
    """Common zeros of polynomials in m variables over GF(q)^m."""
    for P in polys:
        if P.nvars != m:
            raise DimensionMismatch(f"polynomial has {P.nvars} variables, A^{m} needs {m}")
    X = affine_point_array(F, m, cap)
    return int(_common_zero_mask(F, polys, X).sum())


# -- construction helpers ----------------------------------------------------

def monomial_poly(F: FieldSpec, exponents: Sequence[int], coeff: int = 1) -> HomogPoly:
    mono = tuple(int(e) for e in exponents)
    return HomogPoly(len(mono), sum(mono), _clean_terms(F, {mono: coeff}))


def linear_form(F: FieldSpec, coeffs: Sequence[int]) -> HomogPoly:
    """sum_i coeffs[i] * x_i."""
    n = len(coeffs)
    terms = {}
    for i, c in enumerate(coeffs):
        mono = tuple(1 if j == i else 0 for j in range(n))
        terms[mono] = int(c)
    return HomogPoly(n, 1, _clean_terms(F, terms))


def multiply(F: FieldSpec, P: HomogPoly, Q: HomogPoly) -> HomogPoly:
    if P.nvars != Q.nvars:
        raise DimensionMismatch(f"cannot multiply polynomials in {P.nvars} and {Q.nvars} variables")
    terms: dict[Monomial, int] = {}
    for m1, c1 in P.terms.items():
        for m2, c2 in Q.terms.items():
            mono = tuple(a + b for a, b in zip(m1, m2))
            terms[mono] = F.add(terms.get(mono, 0), F.mul(c1, c2))
    return HomogPoly(P.nvars, P.degree + Q.degree, terms)


def product(F: FieldSpec, factors: Sequence[HomogPoly], nvars: int) -> HomogPoly:
    out = HomogPoly(nvars, 0, {(0,) * nvars: 1})
    for factor in factors:
        out = multiply(F, out, factor)
    return out


def coefficient_vector(P: Poly, basis: Sequence[Monomial]) -> np.ndarray:
    """Coefficients of P aligned with ``basis``; monomials outside it are an error."""
    index = {mono: i for i, mono in enumerate(basis)}
    vec = np.zeros(len(basis), dtype=np.int64)
    for mono, coeff in P.terms.items():
        if mono not in index:
            raise DimensionMismatch(f"monomial {mono} not in basis")
        vec[index[mono]] = coeff
    return vec


def poly_from_coefficients(coeffs: Sequence[int], basis: Sequence[Monomial], affine: bool = False) -> Poly:
    terms = {mono: int(c) for mono, c in zip(basis, coeffs) if c}
    nvars = len(basis[0])
    if affine:
        return AffinePoly(nvars, max(sum(mono) for mono in basis), terms)
    return HomogPoly(nvars, sum(basis[0]), terms)


def random_poly(F: FieldSpec, d: int, m: int, rng: np.random.Generator, affine: bool = False) -> Poly:
    """A uniformly random nonzero polynomial of degree d (homogeneous) or <= d (affine)."""
    basis = enumerate_monomials(m, d, "bounded" if affine else "homogeneous")
    while True:
        coeffs = rng.integers(0, F.q, size=len(basis))
        if coeffs.any():
            return poly_from_coefficients(coeffs, basis, affine)


# -- text format -------------------------------------------------------------

def parse_poly(F: FieldSpec, text: str, nvars: Optional[int] = None, affine: bool = False) -> Poly:
    """Parse ``c:e0,e1,... + c:e0,e1,...``; ``0`` is the zero polynomial."""
    text = text.strip()
    terms: dict[Monomial, int] = {}
    if text and text != "0":
        for raw in text.split("+"):
            try:
                coeff_text, exp_text = raw.strip().split(":")
                coeff = int(coeff_text)
                mono = tuple(int(e) for e in exp_text.split(","))
            except ValueError as exc:
                raise UsageError(f"bad polynomial term '{raw.strip()}'") from exc
            if not 0 <= coeff < F.q:
                raise UsageError(f"coefficient {coeff} is not an element of {F}")
            if nvars is not None and len(mono) != nvars:
                raise DimensionMismatch(f"term '{raw.strip()}' has {len(mono)} exponents, expected {nvars}")
            nvars = len(mono)
            terms[mono] = F.add(terms.get(mono, 0), coeff)
    if nvars is None:
        raise UsageError("cannot infer the variable count of the zero polynomial")
    degrees = {sum(mono) for mono in terms}
    if affine:
        return AffinePoly(nvars, max(degrees, default=0), terms)
    if len(degrees) > 1:
        raise UsageError(f"polynomial '{text}' is not homogeneous")
    return HomogPoly(nvars, degrees.pop() if degrees else 0, terms)


def format_poly(P: Poly) -> str:
    """Inverse of parse_poly; terms in descending lexicographic monomial order."""
    if P.is_zero:
        return "0"
    monos = sorted(P.terms, reverse=True)
    return " + ".join(f"{P.terms[mono]}:{','.join(str(e) for e in mono)}" for mono in monos)
