"""Exact arithmetic in finite fields GF(p^e).

Elements are integers in [0, q): the base-p digits of an element are the
little-endian coefficients of its residue polynomial modulo the field's
modulus. Scalar operations work on plain ints; the ``v*`` methods work
elementwise on numpy integer arrays and are what the search code uses.
"""

import functools
import itertools
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import galois
import numpy as np

from errors import (
    DivisionByZero,
    NotPrime,
    ReducibleModulus,
    UnsupportedFieldSize,
    UsageError,
)

logger = logging.getLogger(__name__)

MODULUS_TABLE_PATH = Path(__file__).with_name("moduli.txt")
TABLE_LIMIT = 1 << 10
SEARCH_LIMIT = 1 << 20

OPS = ("add", "sub", "mul", "div", "neg", "inv", "pow")


def is_prime(n: int) -> bool:
    """Trial-division primality test (field sizes here are small)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split q into (p, e) with q = p^e, or raise NotPrime."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    p = next(f for f in range(2, q + 1) if q % f == 0)
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise NotPrime(f"{q} is not a prime power")
    return p, e


# Polynomials over GF(p) as little-endian coefficient lists.

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial b over GF(p)."""
    r = list(a)
    db = len(b) - 1
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] % p
        if c:
            for j in range(db + 1):
                r[i - db + j] = (r[i - db + j] - c * b[j]) % p
    return _poly_trim([x % p for x in r[:db]] if db > 0 else [])


def _is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..e/2."""
    e = len(modulus) - 1
    for deg in range(1, e // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not _poly_rem(modulus, list(low) + [1], p):
                return False
    return True


def parse_modulus(text: str) -> tuple[int, ...]:
    """Parse a comma-separated little-endian coefficient list (``--modulus``)."""
    try:
        return tuple(int(c) for c in text.replace(" ", "").split(",") if c != "")
    except ValueError as exc:
        raise UsageError(f"bad modulus '{text}': {exc}") from exc


@functools.lru_cache(maxsize=None)
def load_modulus_table(path: Path = MODULUS_TABLE_PATH) -> dict[tuple[int, int], tuple[int, ...]]:
    """Read the modulus table file into {(p, e): coefficients}."""
    table = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        nums = [int(x) for x in line.split()]
        p, e, coeffs = nums[0], nums[1], tuple(nums[2:])
        if len(coeffs) != e + 1:
            raise UsageError(f"{path.name}:{lineno}: expected {e + 1} coefficients")
        table[(p, e)] = coeffs
    return table


def _first_irreducible(p: int, e: int) -> tuple[int, ...]:
    for value in range(p ** e):
        low = [(value // p ** i) % p for i in range(e)]
        candidate = tuple(low) + (1,)
        if _is_irreducible(candidate, p):
            return candidate
    raise UnsupportedFieldSize(f"no irreducible polynomial found for GF({p}^{e})")


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^e) under a fixed monic irreducible modulus."""
    p: int
    e: int
    modulus: tuple[int, ...]
    q: int = field(init=False)
    primitive: int = field(init=False, compare=False)
    exp_table: Optional[np.ndarray] = field(init=False, repr=False, compare=False)
    log_table: Optional[np.ndarray] = field(init=False, repr=False, compare=False)
    add_table: Optional[np.ndarray] = field(init=False, repr=False, compare=False)
    mul_table: Optional[np.ndarray] = field(init=False, repr=False, compare=False)
    neg_table: Optional[np.ndarray] = field(init=False, repr=False, compare=False)
    inv_table: Optional[np.ndarray] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p ** self.e)
        for name in ("exp_table", "log_table", "add_table", "mul_table", "neg_table", "inv_table"):
            object.__setattr__(self, name, None)
        object.__setattr__(self, "primitive", self._find_primitive())
        if self.q <= TABLE_LIMIT:
            self._build_tables()

    # -- digit / polynomial plumbing -------------------------------------

    def digits(self, a: int) -> list[int]:
        return [(a // self.p ** i) % self.p for i in range(self.e)]

    def encode(self, digits: Sequence[int]) -> int:
        return sum((d % self.p) * self.p ** i for i, d in enumerate(digits))

    def _mul_poly(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self.encode(_poly_rem(prod, self.modulus, self.p))

    def _find_primitive(self) -> int:
        if self.q == 2:
            return 1
        order = self.q - 1
        factors = {f for f in range(2, order + 1) if order % f == 0 and is_prime(f)}
        for g in range(2, self.q):
            if all(self._pow_poly(g, order // f) != 1 for f in factors):
                return g
        raise UnsupportedFieldSize(f"no primitive element in GF({self.q})")

    def _pow_poly(self, a: int, n: int) -> int:
        result, base = 1, a
        while n:
            if n & 1:
                result = self._mul_poly(result, base)
            base = self._mul_poly(base, base)
            n >>= 1
        return result

    def _build_tables(self):
        q, order = self.q, self.q - 1
        exp_table = np.zeros(2 * order, dtype=np.int64)
        log_table = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(order):
            exp_table[i] = x
            log_table[x] = i
            x = self._mul_poly(x, self.primitive)
        exp_table[order:] = exp_table[:order]

        elems = np.arange(q, dtype=np.int64)
        powers = self.p ** np.arange(self.e, dtype=np.int64)
        digits = (elems[:, None] // powers) % self.p
        add_table = (((digits[:, None, :] + digits[None, :, :]) % self.p) * powers).sum(axis=2)
        neg_table = (((-digits) % self.p) * powers).sum(axis=1)

        logs = log_table[elems]
        mul_table = exp_table[(logs[:, None] + logs[None, :]) % order]
        mul_table[0, :] = 0
        mul_table[:, 0] = 0
        inv_table = np.zeros(q, dtype=np.int64)
        inv_table[1:] = exp_table[(order - log_table[1:]) % order]

        dtype = np.int16 if q <= (1 << 15) else np.int64
        object.__setattr__(self, "exp_table", exp_table)
        object.__setattr__(self, "log_table", log_table)
        object.__setattr__(self, "add_table", add_table.astype(dtype))
        object.__setattr__(self, "mul_table", mul_table.astype(dtype))
        object.__setattr__(self, "neg_table", neg_table.astype(dtype))
        object.__setattr__(self, "inv_table", inv_table.astype(dtype))

    @property
    def has_tables(self) -> bool:
        return self.mul_table is not None

    # -- scalar arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.has_tables:
            return int(self.add_table[a, b])
        if self.e == 1:
            return (a + b) % self.p
        return self.encode([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        if self.has_tables:
            return int(self.neg_table[a])
        return self.encode([-x for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.has_tables:
            return int(self.mul_table[a, b])
        return self._mul_poly(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"zero has no inverse in GF({self.q})")
        if self.has_tables:
            return int(self.inv_table[a])
        return self._pow_poly(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        if a == 0:
            return 1 if n == 0 else 0
        if self.has_tables:
            return int(self.exp_table[(int(self.log_table[a]) * n) % (self.q - 1)])
        return self._pow_poly(a, n)

    # -- vectorised arithmetic on numpy arrays --------------------------------

    def vadd(self, a, b) -> np.ndarray:
        if self.has_tables:
            return self.add_table[a, b]
        if self.e == 1:
            return (np.asarray(a, dtype=np.int64) + b) % self.p
        return np.frompyfunc(self.add, 2, 1)(a, b).astype(np.int64)

    def vneg(self, a) -> np.ndarray:
        if self.has_tables:
            return self.neg_table[a]
        if self.e == 1:
            return (-np.asarray(a, dtype=np.int64)) % self.p
        return np.frompyfunc(self.neg, 1, 1)(a).astype(np.int64)

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        if self.has_tables:
            return self.mul_table[a, b]
        if self.e == 1:
            return (np.asarray(a, dtype=np.int64) * b) % self.p
        return np.frompyfunc(self.mul, 2, 1)(a, b).astype(np.int64)

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a)
        if np.any(a == 0):
            raise DivisionByZero("zero has no inverse")
        if self.has_tables:
            return self.inv_table[a]
        return np.frompyfunc(self.inv, 1, 1)(a).astype(np.int64)

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def __str__(self) -> str:
        return f"GF({self.q})"


@dataclass(frozen=True)
class FieldElement:
    """An element of a specific field, with operator overloading."""
    field: FieldSpec
    value: int

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise UsageError(f"elements of {self.field} and {other.field} do not mix")
            return other.value
        return int(other) % self.field.q

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._coerce(other)))

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._coerce(other)))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._coerce(other)))

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._coerce(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.value, n))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value}@GF({self.field.q})"


@functools.lru_cache(maxsize=64)
def _cached_field(p: int, e: int, modulus: tuple[int, ...]) -> FieldSpec:
    if not _is_irreducible(modulus, p):
        raise ReducibleModulus(f"{list(modulus)} is reducible over GF({p})")
    spec = FieldSpec(p, e, modulus)
    logger.debug(f"Constructed GF({spec.q}) with modulus {list(modulus)}, primitive {spec.primitive}")
    return spec


def make_field(p: int, e: int = 1, modulus: Optional[Sequence[int]] = None) -> FieldSpec:
    """Construct GF(p^e), verifying primality of p and irreducibility of the modulus."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise UsageError(f"field exponent must be positive, got {e}")
    q = p ** e

    if modulus is not None:
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1 or any(not 0 <= c < p for c in modulus):
            raise ReducibleModulus(
                f"modulus {list(modulus)} is not a monic degree-{e} polynomial over GF({p})"
            )
    elif e == 1:
        modulus = (0, 1)
    elif (p, e) in load_modulus_table():
        modulus = load_modulus_table()[(p, e)]
    elif q <= SEARCH_LIMIT:
        modulus = _first_irreducible(p, e)
        logger.info(f"GF({q}) not in modulus table, using {list(modulus)}")
    else:
        raise UnsupportedFieldSize(f"GF({q}) needs an explicit --modulus (q > 2^20)")

    return _cached_field(p, e, modulus)


def field_from_order(q: int, modulus: Optional[Sequence[int]] = None) -> FieldSpec:
    """make_field for a prime power q given as a single integer."""
    p, e = prime_power(q)
    return make_field(p, e, modulus)


@functools.lru_cache(maxsize=64)
def galois_field(F: FieldSpec) -> type[galois.FieldArray]:
    """The galois FieldArray class for F, built on F's own modulus.

    galois encodes an element as its coefficients read as base-p digits, the
    same integers FieldSpec uses, so arrays convert without relabelling.
    """
    if F.e == 1:
        return galois.GF(F.p)
    return galois.GF(F.q, irreducible_poly=list(reversed(F.modulus)), verify=False)


def field_arith(a: FieldElement, b: Optional[FieldElement], op: str) -> FieldElement:
    """Apply one of add, sub, mul, div, neg, inv, pow to field elements.

    For ``pow`` the exponent is ``int(b)``; ``neg`` and ``inv`` ignore b.
    """
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise UsageError(f"unknown field operation '{op}', expected one of {OPS}")


def enumerate_elements(F: FieldSpec) -> list[FieldElement]:
    """All q elements in ascending encoded order."""
    return [FieldElement(F, v) for v in range(F.q)]
