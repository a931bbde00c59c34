"""Closed-form values and bounds for e_r(d, m).

Functions with sharp hypotheses raise HypothesisViolated outside them;
compare_report turns those into applicability flags instead.
"""

import logging
from dataclasses import dataclass
from math import comb
from typing import Callable, Optional, Sequence

from errors import HypothesisViolated, PrmForgeError, RankOutOfRange, UsageError
from poly import unrank_composition
from pspace import p_k

logger = logging.getLogger(__name__)


@dataclass
class BoundReport:
    name: str
    value: Optional[int]
    applicable: bool
    reason: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "applicable": self.applicable, "reason": self.reason}


@dataclass(frozen=True)
class Certificate:
    """A value for e_r obtained elsewhere: kind is exact, lower or upper."""
    name: str
    value: int
    kind: str = "exact"


def _floor_power(q: int, e: int) -> int:
    """floor(q^e), which is 0 for e < 0."""
    return q ** e if e >= 0 else 0


def delta(j: int) -> int:
    """1 + 2 + ... + (j+1), the number of quadratic monomials in j+1 variables."""
    return (j + 1) * (j + 2) // 2


def tbc_bound(q: int, d: int, m: int, r: int) -> int:
    """The Tsfasman-Boguslavsky value T_r(d, m)."""
    if d < 1 or m < 1:
        raise UsageError(f"need d >= 1 and m >= 1, got d={d}, m={m}")
    nu = unrank_composition(r, d, m + 1)
    j = next(i for i, v in enumerate(nu, 1) if v)
    total = p_k(q, m - 2 * j)
    for i in range(j, m + 1):
        total += nu[i - 1] * (p_k(q, m - i) - p_k(q, m - i - j))
    return total


def tbc_simplified(q: int, d: int, m: int, r: int) -> int:
    """T_r(d, m) for r <= m + 1 in closed form."""
    if not 1 <= r <= m + 1:
        raise RankOutOfRange(f"closed form needs 1 <= r <= m+1 = {m + 1}, got r={r}")
    if d < 1:
        raise UsageError(f"need d >= 1, got d={d}")
    if d == 1:
        return p_k(q, m - r)
    return (d - 1) * q ** (m - 1) + p_k(q, m - 2) + _floor_power(q, m - r)


def zanella_bound(q: int, m: int, r: int) -> int:
    """Upper bound on e_r(2, m): p_k + floor(q^(eps-1))."""
    top = delta(m)
    if not 1 <= r <= top:
        raise RankOutOfRange(f"need 1 <= r <= {top} quadrics in P^{m}, got r={r}")
    for k in range(-1, m):
        lo = top - (delta(k + 1) if k + 1 >= 0 else 0)
        hi = top - (delta(k) if k >= 0 else 0)
        if lo < r <= hi:
            eps = hi - r
            return p_k(q, k) + _floor_power(q, eps - 1)
    raise RankOutOfRange(f"no range holds r={r}")


def hp_value(q: int, d: int, m: int, r: int) -> int:
    """e_r^Aff(d, m) for d < q and r <= m + 1: (d-1)q^(m-1) + floor(q^(m-r))."""
    if not d < q:
        raise HypothesisViolated(f"needs d < q, got d={d}, q={q}")
    if not 1 <= r <= m + 1:
        raise HypothesisViolated(f"needs 1 <= r <= m+1 = {m + 1}, got r={r}")
    return (d - 1) * q ** (m - 1) + _floor_power(q, m - r)


def serre_bound(q: int, d: int, m: int) -> int:
    """Projective zeros of one degree-d form: at most dq^(m-1) + p_(m-2), for d <= q + 1."""
    if d > q + 1:
        raise HypothesisViolated(f"needs d <= q+1, got d={d}, q={q}")
    return d * q ** (m - 1) + p_k(q, m - 2)


def ore_bound(q: int, d: int, m: int) -> int:
    """Affine zeros of one polynomial of degree d <= q: at most dq^(m-1)."""
    if d > q:
        raise HypothesisViolated(f"needs d <= q, got d={d}, q={q}")
    return d * q ** (m - 1)


def affine_monotone_bound(q: int, d: int, m: int, r: int) -> int:
    k = comb(m + d, d)
    if not 1 <= r <= k:
        raise RankOutOfRange(f"need 1 <= r <= {k}, got r={r}")
    if not d < q:
        raise HypothesisViolated(f"needs d < q, got d={d}, q={q}")
    return d * q ** (m - 1) - r + 1


def terminal_er(q: int, d: int, m: int, s: int) -> int:
    """e_(k-s)(d, m) = s for 0 <= s <= d when d < q - 1."""
    if not 0 <= s <= d:
        raise HypothesisViolated(f"needs 0 <= s <= d = {d}, got s={s}")
    if not d < q - 1:
        raise HypothesisViolated(f"needs d < q-1, got d={d}, q={q}")
    return s


def er_upto3_formula(q: int, d: int, m: int, r: int) -> int:
    """Exact e_r(d, m) for r <= 3, 1 < d < q - 1, m > 1."""
    if not 1 <= r <= 3:
        raise HypothesisViolated(f"needs 1 <= r <= 3, got r={r}")
    if not 1 < d < q - 1:
        raise HypothesisViolated(f"needs 1 < d < q-1, got d={d}, q={q}")
    if m < 2:
        raise HypothesisViolated(f"needs m > 1, got m={m}")
    return (d - 1) * q ** (m - 1) + p_k(q, m - 2) + _floor_power(q, m - r)


def _report(name: str, fn: Callable[[], int], guard: Optional[str] = None) -> BoundReport:
    if guard:
        return BoundReport(name, None, False, guard)
    try:
        return BoundReport(name, fn(), True)
    except PrmForgeError as exc:
        return BoundReport(name, None, False, str(exc))


def compare_report(q: int, d: int, m: int, r: int, certificates: Sequence[Certificate] = ()) -> list[BoundReport]:
    """Every applicable bound for (q, d, m, r), the certificates, and a TBC verdict."""
    k = comb(m + d, d)
    reports = [
        _report("tbc", lambda: tbc_bound(q, d, m, r)),
        _report("tbc_simplified", lambda: tbc_simplified(q, d, m, r)),
        _report("zanella", lambda: zanella_bound(q, m, r), None if d == 2 else "quadrics only (d = 2)"),
        _report("serre", lambda: serre_bound(q, d, m), None if r == 1 else "single form only (r = 1)"),
        _report("ore", lambda: ore_bound(q, d, m), None if r == 1 else "single affine polynomial only (r = 1)"),
        _report("hp_affine", lambda: hp_value(q, d, m, r)),
        _report("affine_monotone", lambda: affine_monotone_bound(q, d, m, r)),
        _report("terminal", lambda: terminal_er(q, d, m, k - r), None if k - r <= d else f"needs r >= k - d = {k - d}"),
        _report("er_upto3", lambda: er_upto3_formula(q, d, m, r)),
    ]
    for cert in certificates:
        reports.append(BoundReport(f"{cert.kind}:{cert.name}", cert.value, True))
    reports.append(_verdict(q, d, m, r, reports, certificates))
    return reports


def _verdict(q: int, d: int, m: int, r: int, reports: list[BoundReport], certificates: Sequence[Certificate]) -> BoundReport:
    by_name = {rep.name: rep for rep in reports}
    tbc = by_name["tbc"]
    where = f"(d,m,r)=({d},{m},{r})"
    if not tbc.applicable:
        return BoundReport("tbc_verdict", None, False, tbc.reason)
    if not d < q - 1:
        return BoundReport("tbc_verdict", None, False, f"conjecture stated for d < q-1, got d={d}, q={q}")

    exact = [c.value for c in certificates if c.kind == "exact"]
    exact += [by_name[name].value for name in ("terminal", "er_upto3") if by_name[name].applicable]
    uppers = exact + [c.value for c in certificates if c.kind == "upper"]
    uppers += [by_name[name].value for name in ("zanella", "serre") if by_name[name].applicable]
    lowers = exact + [c.value for c in certificates if c.kind == "lower"]

    T = tbc.value
    if exact and len(set(exact)) > 1:
        return BoundReport("tbc_verdict", T, True, f"conflicting exact values {sorted(set(exact))} at {where}")
    if uppers and min(uppers) < T:
        return BoundReport("tbc_verdict", T, True, f"TBC refuted at {where}: e_r <= {min(uppers)} < T_r = {T}")
    if lowers and max(lowers) > T:
        return BoundReport("tbc_verdict", T, True, f"TBC refuted at {where}: e_r >= {max(lowers)} > T_r = {T}")
    if exact:
        return BoundReport("tbc_verdict", T, True, f"consistent at {where}: e_r = T_r = {T}")
    return BoundReport("tbc_verdict", T, True, f"open at {where}: no certificate pins e_r")


def refutation_scan(q: int, m: int) -> list[int]:
    """Ranks r in (m+1, delta(m)] where the quadric bound already rules out T_r(2, m)."""
    if q <= 3:
        raise HypothesisViolated(f"the conjecture for quadrics needs q > 3, got q={q}")
    found = [r for r in range(m + 2, delta(m) + 1) if zanella_bound(q, m, r) < tbc_bound(q, 2, m, r)]
    logger.info(f"q={q}, m={m}: quadric bound below T_r for r in {found}")
    return found
