import numpy as np
import pytest

from bounds import affine_monotone_bound
from codes import dual_code, prm_code, rm_code
from config import SearchConfig
from errors import DegreeTooLarge, DimensionMismatch, RankOutOfRange, SizeOverflow, UsageError
from gf import field_from_order
from hweights import (
    FLATS,
    SUBSPACES,
    SubspaceIter,
    WeightHierarchy,
    basis_from_index,
    common_zero_count,
    dual_hierarchy,
    enumerate_subspaces,
    er_exhaustive,
    er_from_ghw,
    er_random_search,
    gaussian_binomial,
    ghw_from_er,
    max_common_zeros,
    pivot_patterns,
    value_matrix,
    wei_duality_check,
    wei_monotonicity_check,
    weight_hierarchy,
)
from linalg import rank


@pytest.mark.parametrize(
    "k, r, q, expected",
    [(6, 1, 4, 1365), (6, 3, 4, 376805), (6, 2, 4, 93093), (2, 1, 2, 3), (3, 2, 2, 7), (4, 0, 3, 1), (4, 4, 3, 1)],
)
def test_gaussian_binomial(k, r, q, expected):
    assert gaussian_binomial(k, r, q) == expected


def test_gaussian_binomial_range():
    with pytest.raises(RankOutOfRange):
        gaussian_binomial(3, 4, 2)


def test_pivot_patterns_colex():
    assert pivot_patterns(3, 2) == [(0, 1), (0, 2), (1, 2)]


def test_subspace_stream(gf2):
    stream = enumerate_subspaces(3, 2, gf2)
    bases = list(stream)
    assert len(stream) == len(bases) == 7
    assert bases[0].tolist() == [[1, 0, 0], [0, 1, 0]]
    assert all(rank(gf2, B) == 2 for B in bases)
    assert len({B.tobytes() for B in bases}) == 7


def test_subspace_stream_counts(gf3):
    for k, r in [(3, 1), (3, 2), (4, 2)]:
        assert sum(1 for _ in SubspaceIter(gf3, k, r)) == gaussian_binomial(k, r, 3)


def test_basis_from_index_follows_stream(gf3):
    stream = SubspaceIter(gf3, 4, 2)
    for pattern in stream.partitions():
        for i, B in enumerate(stream.iter_pattern(pattern)):
            assert (basis_from_index(gf3, 4, pattern, i) == B).all()


def test_subspace_cap(gf4):
    with pytest.raises(SizeOverflow):
        SubspaceIter(gf4, 6, 3, cap=100)
    with pytest.raises(RankOutOfRange):
        SubspaceIter(gf4, 3, 0)


def test_small_table(gf4):
    values = tuple(er_exhaustive(gf4, 2, 2, r).value for r in range(1, 7))
    assert values == (9, 6, 5, 2, 1, 0)


@pytest.mark.parametrize("r", [1, 2])
def test_strategies_agree(gf4, r):
    V = value_matrix(gf4, 2, 2)
    by_subspaces = max_common_zeros(gf4, V, r, "subspaces")
    by_flats = max_common_zeros(gf4, V, r, "flats")
    assert by_subspaces.value == by_flats.value
    assert by_subspaces.mode == SUBSPACES
    assert by_flats.mode == FLATS


@pytest.mark.parametrize("q", [4, pytest.param(5, marks=pytest.mark.slow)])
def test_affine_er_below_monotone_bound(q, search):
    F = field_from_order(q)
    for r in range(1, 7):
        value = er_exhaustive(F, 2, 2, r, affine=True, search=search).value
        assert value <= affine_monotone_bound(q, 2, 2, r), f"r={r}"


@pytest.mark.parametrize("strategy, r", [("subspaces", 1), ("subspaces", 2), ("flats", 2), ("flats", 4), ("flats", 5)])
def test_parallel_search_matches_serial(gf4, search, strategy, r):
    V = value_matrix(gf4, 2, 2)
    serial = max_common_zeros(gf4, V, r, strategy, search, threads=1)
    pooled = max_common_zeros(gf4, V, r, strategy, search, threads=2)
    assert pooled.value == serial.value
    assert pooled.mode == serial.mode
    assert (pooled.witness == serial.witness).all()
    assert pooled.visited == serial.visited


def test_witness_recounts(gf4):
    V = value_matrix(gf4, 2, 2)
    for r in range(1, 4):
        result = er_exhaustive(gf4, 2, 2, r)
        assert result.witness.shape == (r, 6)
        assert rank(gf4, result.witness) == r
        assert common_zero_count(gf4, V, result.witness) == result.value
        assert result.visited > 0


def test_search_result_document(gf4):
    doc = er_exhaustive(gf4, 2, 2, 4).to_dict()
    assert doc["value"] == 2
    assert set(doc) == {"value", "witness_rows", "mode", "elapsed_sec", "visited"}
    assert len(doc["witness_rows"]) == 4


def test_affine_third_weight(gf5):
    assert er_exhaustive(gf5, 2, 2, 3, affine=True).value == 5


def test_cap_refuses_with_hint(gf4):
    tiny = SearchConfig(point_cap=10 ** 7, subspace_cap=1000, batch_elements=1 << 20, threads=1)
    with pytest.raises(SizeOverflow) as info:
        er_exhaustive(gf4, 2, 2, 3, search=tiny)
    assert "--mode random" in str(info.value)


def test_search_preconditions(gf4):
    with pytest.raises(DegreeTooLarge):
        er_exhaustive(gf4, 4, 2, 1)
    with pytest.raises(RankOutOfRange):
        er_exhaustive(gf4, 2, 2, 7)
    with pytest.raises(UsageError):
        max_common_zeros(gf4, value_matrix(gf4, 2, 2), 1, "greedy")
    with pytest.raises(DimensionMismatch):
        max_common_zeros(gf4, np.array([[1, 1, 1], [1, 1, 1]]), 1)


def test_random_search(gf4):
    exact = er_exhaustive(gf4, 2, 2, 2).value
    first = er_random_search(gf4, 2, 2, 2, 300, seed=7)
    again = er_random_search(gf4, 2, 2, 2, 300, seed=7)
    assert first.value <= exact
    assert first.value == again.value
    assert (first.witness == again.witness).all()
    assert first.mode == "randomized(300)"
    with pytest.raises(UsageError):
        er_random_search(gf4, 2, 2, 2, 0)


def test_ghw_conversions():
    assert ghw_from_er(21, 9) == 12
    assert er_from_ghw(21, 12) == 9
    with pytest.raises(UsageError):
        ghw_from_er(21, 22)
    with pytest.raises(UsageError):
        er_from_ghw(21, -1)


def test_prm_hierarchy(gf4):
    H = weight_hierarchy(prm_code(gf4, 2, 2))
    assert H.weights == (12, 15, 16, 19, 20, 21)
    assert H.mode == "exhaustive"
    assert wei_monotonicity_check(H)
    dual = dual_hierarchy(H)
    assert dual.weights[0] == 4
    assert wei_duality_check(H, dual)


def test_linear_prm_hierarchy(gf4):
    assert weight_hierarchy(prm_code(gf4, 1, 2)).weights == (16, 20, 21)


def test_rm_hierarchy_and_dual(gf4):
    C = rm_code(gf4, 2, 1)
    H = weight_hierarchy(C)
    assert H.weights == (2, 3, 4)
    assert dual_hierarchy(H).weights == (4,)
    assert weight_hierarchy(dual_code(C)).weights == (4,)


def test_hybrid_hierarchy_uses_closed_forms(gf4):
    small = SearchConfig(point_cap=10 ** 7, subspace_cap=10 ** 5, batch_elements=1 << 20, threads=1)
    H = weight_hierarchy(prm_code(gf4, 2, 2), "auto", small)
    assert H.weights == (12, 15, 16, 19, 20, 21)
    assert H.mode == "hybrid"
    assert H.notes
    with pytest.raises(SizeOverflow):
        weight_hierarchy(prm_code(gf4, 2, 2), "exhaustive", small)


def test_wei_checks_reject():
    assert not wei_monotonicity_check(WeightHierarchy("x", (3, 3), 5, "exhaustive"))
    assert not wei_monotonicity_check(WeightHierarchy("x", (0, 3), 5, "exhaustive"))
    H = WeightHierarchy("x", (2, 3), 4, "exhaustive")
    assert not wei_duality_check(H, WeightHierarchy("y", (2, 4), 4, "exhaustive"))
    assert wei_duality_check(H, dual_hierarchy(H))


def test_hierarchy_document(gf4):
    doc = weight_hierarchy(prm_code(gf4, 1, 2)).to_dict()
    assert doc == {"label": "PRM_4(1,2)", "n": 21, "k": 3, "weights": [16, 20, 21], "mode": "exhaustive"}
