"""Generalized Hamming weights d_r and maximum common-zero counts e_r.

Everything reduces to one question about a k x n value matrix V (row i is
the value vector of the i-th basis polynomial, or the i-th generator row):
over all r-dimensional subspaces of row combinations, what is the largest
number of columns on which the whole subspace vanishes?

Two exact strategies answer it:

* ``subspaces`` streams every r-dimensional subspace of GF(q)^k as a
  canonical RREF basis and ANDs packed per-row zero masks.
* ``flats`` uses the projective-system view: the columns vanishing on a
  subspace W are exactly the columns lying in the annihilator of W, so e_r is
  the largest flat of rank k - r in the column matroid of V. Each flat is
  visited once through its greedy basis.

The cheaper one is picked by a cost estimate. Both honour a cap and raise
SizeOverflow above it; er_random_search is the fallback.

Wei duality is applied with the reflection j -> n + 1 - j: the weights of a
code and the reflected weights of its dual partition {1, ..., n}.
"""

import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb, prod
from typing import Optional, Sequence

import numpy as np

from codes import LinearCode, prm_code, rm_code
from config import SearchConfig, default_search_config, effective_batch_elements
from errors import DegreeTooLarge, DimensionMismatch, RankOutOfRange, SizeOverflow, UsageError
from gf import FieldSpec
from linalg import eliminate_column, matmul, nullspace, rank, rref
from pspace import normalize_rows

logger = logging.getLogger(__name__)

SUBSPACES = "exhaustive:subspaces"
FLATS = "exhaustive:flats"
RANDOM_HINT = "use --mode random for a lower bound"

# Below this estimated cost a process pool costs more than it saves.
PARALLEL_MIN_COST = 10 ** 7


def gaussian_binomial(k: int, r: int, q: int) -> int:
    """Number of r-dimensional subspaces of GF(q)^k."""
    if not 0 <= r <= k:
        raise RankOutOfRange(f"need 0 <= r <= k, got r={r}, k={k}")
    num = den = 1
    for i in range(r):
        num *= q ** (k - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def pivot_patterns(k: int, r: int) -> list[tuple[int, ...]]:
    """Pivot column sets of r x k RREF matrices, in colexicographic order."""
    return sorted(itertools.combinations(range(k), r), key=lambda c: c[::-1])


def free_columns(pattern: Sequence[int], k: int) -> list[list[int]]:
    """Per row, the columns holding free entries: right of the pivot, not a pivot."""
    pivots = set(pattern)
    return [[c for c in range(p + 1, k) if c not in pivots] for p in pattern]


def basis_from_index(F: FieldSpec, k: int, pattern: Sequence[int], index: int) -> np.ndarray:
    """The index-th basis (0-based) of a pivot pattern's stream."""
    frees = free_columns(pattern, k)
    slots = [(i, c) for i, cols in enumerate(frees) for c in cols]
    B = np.zeros((len(pattern), k), dtype=np.int64)
    for i, p in enumerate(pattern):
        B[i, p] = 1
    for pos, (i, c) in enumerate(reversed(slots)):
        B[i, c] = (index // F.q ** pos) % F.q
    return B


class SubspaceIter:
    """Stream of the r-dimensional subspaces of GF(q)^k as canonical RREF bases.

    Pivot patterns come in colexicographic order; within a pattern the free
    entries are filled row-major, first free entry most significant, values
    ascending.
    """

    def __init__(self, F: FieldSpec, k: int, r: int, cap: Optional[int] = None):
        if not 1 <= r <= k:
            raise RankOutOfRange(f"need 1 <= r <= k, got r={r}, k={k}")
        self.F = F
        self.k = k
        self.r = r
        self.count = gaussian_binomial(k, r, F.q)
        if cap is not None and self.count > cap:
            raise SizeOverflow(f"[{k} choose {r}]_{F.q} = {self.count} subspaces exceeds cap {cap}", RANDOM_HINT)
        self.patterns = pivot_patterns(k, r)

    def __len__(self) -> int:
        return self.count

    def __iter__(self):
        for pattern in self.patterns:
            yield from self.iter_pattern(pattern)

    def partitions(self) -> list[tuple[int, ...]]:
        return list(self.patterns)

    def iter_pattern(self, pattern: Sequence[int]):
        frees = free_columns(pattern, self.k)
        slots = [(i, c) for i, cols in enumerate(frees) for c in cols]
        for values in itertools.product(range(self.F.q), repeat=len(slots)):
            B = np.zeros((self.r, self.k), dtype=np.int64)
            for i, p in enumerate(pattern):
                B[i, p] = 1
            for (i, c), v in zip(slots, values):
                B[i, c] = v
            yield B


def enumerate_subspaces(k: int, r: int, F: FieldSpec, cap: Optional[int] = None) -> SubspaceIter:
    return SubspaceIter(F, k, r, cap)


@dataclass
class SearchResult:
    """Extremal zero count over r-dimensional subspaces, with a witness basis."""
    value: int
    witness: np.ndarray
    mode: str
    elapsed: float
    r: int
    visited: int = 0
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "witness_rows": self.witness.tolist(),
            "mode": self.mode,
            "elapsed_sec": round(self.elapsed, 6),
            "visited": self.visited,
        }


def common_zero_count(F: FieldSpec, V: np.ndarray, B: np.ndarray) -> int:
    """Number of columns of V on which every row of B @ V vanishes."""
    return int((~matmul(F, B, V).any(axis=0)).sum())


# -- subspace strategy -------------------------------------------------------

def _pack(mask: np.ndarray, words: int) -> np.ndarray:
    bits = np.packbits(mask, axis=1, bitorder="little")
    padded = np.zeros((mask.shape[0], words * 8), dtype=np.uint8)
    padded[:, :bits.shape[1]] = bits
    return padded.view(np.uint64)


def _row_masks(F: FieldSpec, V: np.ndarray, pivot: int, cols: list[int], words: int, batch: int) -> np.ndarray:
    """Packed zero masks of V[pivot] + sum a_c V[c] for every assignment a, in stream order."""
    n = V.shape[1]
    f = len(cols)
    size = F.q ** f
    out = np.empty((size, words), dtype=np.uint64)
    step = max(1, batch // max(n, 1))
    for lo in range(0, size, step):
        idx = np.arange(lo, min(size, lo + step), dtype=np.int64)
        vals = np.repeat(V[pivot][None, :], idx.size, axis=0)
        for j, c in enumerate(cols):
            digit = (idx // F.q ** (f - 1 - j)) % F.q
            vals = F.vadd(vals, F.vmul(digit[:, None], V[c][None, :]))
        out[lo:lo + idx.size] = _pack(np.asarray(vals) == 0, words)
    return out


def _search_pattern(F: FieldSpec, V: np.ndarray, pattern: tuple[int, ...], batch: int) -> tuple[int, int, int]:
    """Best (value, index) over one pivot pattern; returns (value, index, visited)."""
    k, n = V.shape
    r = len(pattern)
    words = (n + 63) // 64
    frees = free_columns(pattern, k)
    sizes = [F.q ** len(cols) for cols in frees]
    masks = [_row_masks(F, V, p, cols, words, batch) for p, cols in zip(pattern, frees)]

    # trailing rows are combined into one table while it fits in a batch
    split = r - 1
    while split > 0 and prod(sizes[split - 1:]) * words <= batch:
        split -= 1
    suffix = masks[r - 1]
    for i in range(r - 2, split - 1, -1):
        suffix = (masks[i][:, None, :] & suffix[None, :, :]).reshape(-1, words)
    suffix_size = suffix.shape[0]
    chunk = max(1, batch // words)

    best_value, best_index = -1, -1
    all_ones = np.full(words, np.iinfo(np.uint64).max, dtype=np.uint64)
    prefix_ranges = [range(s) for s in sizes[:split]]
    for prefix_number, combo in enumerate(itertools.product(*prefix_ranges)):
        acc = all_ones.copy()
        for i, a in enumerate(combo):
            acc &= masks[i][a]
        for lo in range(0, suffix_size, chunk):
            counts = np.bitwise_count(suffix[lo:lo + chunk] & acc).sum(axis=1, dtype=np.int64)
            j = int(np.argmax(counts))
            if counts[j] > best_value:
                best_value = int(counts[j])
                best_index = prefix_number * suffix_size + lo + j
    return best_value, best_index, prod(sizes)


def _subspace_task(args) -> tuple[int, int, int]:
    F, V, pattern, batch = args
    return _search_pattern(F, V, pattern, batch)


def _run_subspaces(F: FieldSpec, V: np.ndarray, r: int, batch: int, threads: int) -> tuple[int, np.ndarray, int]:
    k = V.shape[0]
    patterns = pivot_patterns(k, r)
    tasks = [(F, V, pattern, batch) for pattern in patterns]
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_subspace_task, tasks))
    else:
        results = [_subspace_task(task) for task in tasks]

    best_value, best_at, visited = -1, None, 0
    for pattern, (value, index, count) in zip(patterns, results):
        visited += count
        logger.debug(f"pattern {pattern}: best {value}")
        if value > best_value:
            best_value, best_at = value, (pattern, index)
    pattern, index = best_at
    return best_value, basis_from_index(F, k, pattern, index), visited


# -- flats strategy ----------------------------------------------------------

class _FlatWalker:
    """Depth-first walk over flats of the column matroid of V, one greedy basis each.

    R is the n x k residue matrix: row j is column j of V reduced modulo the
    span of the chosen columns, so zero rows are exactly the closure.
    """

    def __init__(self, F: FieldSpec, V: np.ndarray, target: int):
        self.F = F
        self.target = target
        self.R0 = np.ascontiguousarray(V.T, dtype=np.int64)
        self.zero0 = ~self.R0.any(axis=1)
        self.best = -1
        self.best_set: Optional[tuple[int, ...]] = None
        self.visited = 0

    def run_from(self, first: int):
        if self.zero0[first]:
            return
        if self.target == 1:
            self._last_level((), self.R0, self.zero0, only=first)
        else:
            self._extend((), self.R0, self.zero0, first)

    def _extend(self, chosen: tuple[int, ...], R: np.ndarray, zero: np.ndarray, p: int):
        R2 = eliminate_column(self.F, R, p)
        zero2 = ~R2.any(axis=1)
        if (zero2[:p] & ~zero[:p]).any():
            return
        chosen = chosen + (p,)
        if len(chosen) == self.target - 1:
            self._last_level(chosen, R2, zero2)
            return
        for nxt in range(p + 1, R.shape[0]):
            if not zero2[nxt]:
                self._extend(chosen, R2, zero2, nxt)

    def _last_level(self, chosen: tuple[int, ...], R: np.ndarray, zero: np.ndarray, only: Optional[int] = None):
        # adding p closes exactly the rows parallel to R[p]
        start = chosen[-1] + 1 if chosen else 0
        live = np.flatnonzero(~zero)
        if live.size == 0 or live[-1] < start:
            return
        rows = normalize_rows(self.F, R[live])
        _, first_pos, inverse, counts = np.unique(
            rows, axis=0, return_index=True, return_inverse=True, return_counts=True
        )
        inverse = inverse.reshape(-1)
        group_min = live[first_pos][inverse]
        canonical = (group_min == live) & (live >= start)
        if only is not None:
            canonical &= live == only
        if not canonical.any():
            return
        values = int(zero.sum()) + counts[inverse][canonical]
        self.visited += int(canonical.sum())
        j = int(np.argmax(values))
        if values[j] > self.best:
            self.best = int(values[j])
            self.best_set = chosen + (int(live[canonical][j]),)


def _flat_task(args) -> tuple[int, Optional[tuple[int, ...]], int]:
    F, V, target, first = args
    walker = _FlatWalker(F, V, target)
    walker.run_from(first)
    return walker.best, walker.best_set, walker.visited


def _run_flats(F: FieldSpec, V: np.ndarray, r: int, threads: int) -> tuple[int, np.ndarray, int]:
    k, n = V.shape
    target = k - r
    if target == 0:
        return int((~V.any(axis=0)).sum()), np.eye(k, dtype=np.int64), 1
    tasks = [(F, V, target, first) for first in range(n)]
    if threads > 1 and n > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_flat_task, tasks, chunksize=max(1, n // (4 * threads))))
    else:
        results = [_flat_task(task) for task in tasks]

    best_value, best_set, visited = -1, None, 0
    for value, chosen, count in results:
        visited += count
        if value > best_value:
            best_value, best_set = value, chosen
    witness = nullspace(F, V[:, list(best_set)].T, k)
    return best_value, witness, visited


# -- public search API -------------------------------------------------------

def subspace_cost(k: int, r: int, q: int, n: int) -> int:
    return gaussian_binomial(k, r, q) * n


def flat_cost(k: int, r: int, n: int) -> int:
    return sum(comb(n, t) for t in range(k - r + 1)) * n * k


def max_common_zeros(
    F: FieldSpec,
    V: np.ndarray,
    r: int,
    strategy: str = "auto",
    search: Optional[SearchConfig] = None,
    threads: Optional[int] = None,
) -> SearchResult:
    """Exact maximum, over r-dimensional row subspaces of V, of the common zero count."""
    search = search or default_search_config()
    V = np.asarray(V, dtype=np.int64)
    k, n = V.shape
    if not 1 <= r <= k:
        raise RankOutOfRange(f"need 1 <= r <= {k}, got r={r}")
    if rank(F, V) < k:
        raise DimensionMismatch("value matrix rows must be linearly independent")

    costs = {SUBSPACES: subspace_cost(k, r, F.q, n), FLATS: flat_cost(k, r, n)}
    if strategy == "auto":
        mode = min(costs, key=costs.get)
    elif strategy in ("subspaces", "flats"):
        mode = SUBSPACES if strategy == "subspaces" else FLATS
    else:
        raise UsageError(f"unknown search strategy '{strategy}'")
    if costs[mode] > search.subspace_cap:
        raise SizeOverflow(
            f"exhaustive search for r={r} over {k}x{n} needs ~{costs[mode]:.3g} operations, "
            f"cap is {search.subspace_cap:.3g}",
            RANDOM_HINT,
        )
    if threads is None:
        threads = search.threads if costs[mode] >= PARALLEL_MIN_COST else 1

    logger.info(f"Searching r={r} over {k}x{n} by {mode} (cost ~{costs[mode]:.3g}, threads={threads})")
    start = time.perf_counter()
    if mode == SUBSPACES:
        value, witness, visited = _run_subspaces(F, V, r, effective_batch_elements(search), threads)
    else:
        value, witness, visited = _run_flats(F, V, r, threads)
    elapsed = time.perf_counter() - start

    recount = common_zero_count(F, V, witness)
    if recount != value:
        raise RuntimeError(f"witness recount {recount} disagrees with search value {value}")
    logger.info(f"r={r}: value {value} after {visited} candidates in {elapsed:.2f}s")
    return SearchResult(value, witness, mode, elapsed, r, visited)


def value_matrix(F: FieldSpec, d: int, m: int, affine: bool = False, cap: Optional[int] = None) -> np.ndarray:
    """Monomial value vectors over the point list; needs d < q so rows are independent."""
    if d >= F.q:
        raise DegreeTooLarge(f"exhaustive e_r needs d < q, got d={d}, q={F.q}")
    code = rm_code(F, d, m, cap) if affine else prm_code(F, d, m, cap)
    return code.generator


def _check_rank(d: int, m: int, r: int) -> int:
    k = comb(m + d, d)
    if not 1 <= r <= k:
        raise RankOutOfRange(f"need 1 <= r <= C(m+d,d) = {k}, got r={r}")
    return k


def er_exhaustive(
    F: FieldSpec,
    d: int,
    m: int,
    r: int,
    affine: bool = False,
    search: Optional[SearchConfig] = None,
    threads: Optional[int] = None,
    strategy: str = "auto",
) -> SearchResult:
    """Exact e_r(d, m) (or the affine e_r^Aff) with a witness basis."""
    _check_rank(d, m, r)
    search = search or default_search_config()
    V = value_matrix(F, d, m, affine, search.point_cap)
    return max_common_zeros(F, V, r, strategy, search, threads)


def er_random_search(
    F: FieldSpec,
    d: int,
    m: int,
    r: int,
    trials: int,
    seed: Optional[int] = None,
    affine: bool = False,
    batch_size: int = 1024,
) -> SearchResult:
    """Lower bound on e_r from uniformly sampled rank-r coefficient matrices."""
    if trials < 1:
        raise UsageError(f"trials must be >= 1, got {trials}")
    k = _check_rank(d, m, r)
    V = value_matrix(F, d, m, affine)
    rng = np.random.default_rng(seed)

    start = time.perf_counter()
    best_value, best_B, accepted, rejected = -1, None, 0, 0
    while accepted < trials:
        B = rng.integers(0, F.q, size=(min(batch_size, trials - accepted), r, k), dtype=np.int64)
        full = np.array([rank(F, b) == r for b in B], dtype=bool)
        rejected += int((~full).sum())
        B = B[full]
        if not len(B):
            continue
        accepted += len(B)
        acc = np.zeros((len(B), r, V.shape[1]), dtype=np.int64)
        for c in range(k):
            acc = np.asarray(F.vadd(acc, F.vmul(B[:, :, c][:, :, None], V[c][None, None, :])), dtype=np.int64)
        counts = (~acc.any(axis=1)).sum(axis=1)
        j = int(np.argmax(counts))
        if counts[j] > best_value:
            best_value, best_B = int(counts[j]), B[j]
    elapsed = time.perf_counter() - start

    result = SearchResult(best_value, rref(F, best_B)[0], f"randomized({trials})", elapsed, r, trials)
    if rejected:
        result.notes.append(f"{rejected} rank-deficient samples rejected")
    logger.info(f"random search r={r}: best {best_value} over {trials} samples in {elapsed:.2f}s")
    return result


def ghw_from_er(n: int, er_value: int) -> int:
    """d_r = n - e_r."""
    if not 0 <= er_value <= n:
        raise UsageError(f"e_r = {er_value} outside 0..{n}")
    return n - er_value


def er_from_ghw(n: int, dr_value: int) -> int:
    """e_r = n - d_r."""
    if not 0 <= dr_value <= n:
        raise UsageError(f"d_r = {dr_value} outside 0..{n}")
    return n - dr_value


# -- weight hierarchies --------------------------------------------------------

@dataclass
class WeightHierarchy:
    """d_1, ..., d_k of a code of length n."""
    label: str
    weights: tuple[int, ...]
    n: int
    mode: str
    notes: list[str] = field(default_factory=list)

    @property
    def k(self) -> int:
        return len(self.weights)

    def to_dict(self) -> dict:
        return {"label": self.label, "n": self.n, "k": self.k, "weights": list(self.weights), "mode": self.mode}


def _formula_er(C: LinearCode, r: int) -> Optional[int]:
    from bounds import er_upto3_formula, terminal_er

    if C.kind != "prm":
        return None
    q, d, m, k = C.F.q, C.d, C.m, C.k
    if d < q - 1 and r >= k - d:
        return terminal_er(q, d, m, k - r)
    if r <= 3 and 1 < d < q - 1 and m > 1:
        return er_upto3_formula(q, d, m, r)
    return None


def weight_hierarchy(
    C: LinearCode,
    method: str = "exhaustive",
    search: Optional[SearchConfig] = None,
    threads: Optional[int] = None,
) -> WeightHierarchy:
    """Higher weights d_r = n - max zero coordinates over r-dimensional subcodes.

    ``auto`` replaces infeasible ranks by closed-form values where they are
    proven (terminal weights, r <= 3) and marks the hierarchy hybrid.
    """
    if method not in ("exhaustive", "auto"):
        raise UsageError(f"unknown hierarchy method '{method}'")
    weights, notes = [], []
    for r in range(1, C.k + 1):
        try:
            e = max_common_zeros(C.F, C.generator, r, search=search, threads=threads).value
        except SizeOverflow:
            e = _formula_er(C, r) if method == "auto" else None
            if e is None:
                raise
            notes.append(f"d_{r} from closed form")
        weights.append(ghw_from_er(C.n, e))
    mode = "hybrid" if notes else "exhaustive"
    return WeightHierarchy(C.label, tuple(weights), C.n, mode, notes)


def wei_monotonicity_check(H: WeightHierarchy) -> bool:
    """1 <= d_1 < d_2 < ... < d_k <= n."""
    w = H.weights
    if not w:
        return True
    return w[0] >= 1 and w[-1] <= H.n and all(a < b for a, b in zip(w, w[1:]))


def wei_duality_check(H: WeightHierarchy, Hdual: WeightHierarchy, n: Optional[int] = None) -> bool:
    """{d_i} and {n + 1 - d_j^perp} partition {1, ..., n}."""
    n = H.n if n is None else n
    if H.k + Hdual.k != n:
        return False
    own = set(H.weights)
    reflected = {n + 1 - w for w in Hdual.weights}
    return len(own) == H.k and len(reflected) == Hdual.k and own | reflected == set(range(1, n + 1)) \
        and not own & reflected


def dual_hierarchy(H: WeightHierarchy, n: Optional[int] = None) -> WeightHierarchy:
    """Hierarchy of the dual code forced by Wei duality."""
    n = H.n if n is None else n
    own = set(H.weights)
    weights = tuple(sorted(n + 1 - j for j in range(1, n + 1) if j not in own))
    return WeightHierarchy(f"{H.label}^perp", weights, n, H.mode, ["derived by Wei duality"])
