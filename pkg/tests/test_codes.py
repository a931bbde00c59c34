import pytest

from codes import (
    NotFoundBelow,
    dual_code,
    dual_min_distance_via_columns,
    linear_code,
    matrix_rank,
    prm_code,
    prm_dimension,
    prm_dual_degree,
    prm_params,
    rm_code,
    rm_params,
)
from errors import DegreeDivisible, DegreeTooLarge, UsageError
from gf import field_from_order
from linalg import matmul


@pytest.mark.parametrize(
    "q, d, m, expected",
    [(4, 2, 2, (21, 6, 12)), (4, 2, 3, (85, 10, 48)), (4, 1, 2, (21, 3, 16)), (5, 3, 2, (31, 10, 15))],
)
def test_prm_params(q, d, m, expected):
    params = prm_params(field_from_order(q), d, m)
    assert (params.n, params.k, params.dmin) == expected
    assert params.to_dict() == dict(zip(("n", "k", "dmin"), expected))


@pytest.mark.parametrize("q, m", [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3)])
def test_prm_dimension_matches_rank(q, m):
    F = field_from_order(q)
    for d in range(1, m * (q - 1) + 1):
        code = prm_code(F, d, m)
        assert code.k == matrix_rank(F, code.generator) == prm_dimension(q, d, m)


def test_top_degree_misses_one_dimension(gf4):
    # at d = m(q-1) the dual is spanned by the all-ones word
    assert prm_params(gf4, 6, 2).k == 20
    assert matrix_rank(gf4, prm_code(gf4, 6, 2).generator) == 20


def test_prm_code_shape(gf4):
    code = prm_code(gf4, 2, 2)
    assert code.generator.shape == (6, 21)
    assert code.label == "PRM_4(2,2)"
    assert code.kind == "prm" and (code.d, code.m) == (2, 2)
    assert code.is_nondegenerate()
    assert not code.notes


def test_prm_code_reduces_dependent_monomials(gf2):
    code = prm_code(gf2, 2, 2)
    assert code.k == prm_dimension(2, 2, 2)
    assert code.notes


def test_rm_code(gf4):
    code = rm_code(gf4, 1, 2)
    assert (code.n, code.k) == (16, 3)
    assert rm_params(gf4, 1, 2).to_dict() == {"n": 16, "k": 3, "dmin": 12}
    assert rm_params(gf4, 2, 1).dmin == 2


def test_degree_limits(gf4):
    with pytest.raises(DegreeTooLarge):
        rm_code(gf4, 4, 2)
    with pytest.raises(DegreeTooLarge):
        prm_code(gf4, 7, 2)
    with pytest.raises(DegreeTooLarge):
        prm_params(gf4, 0, 2)
    with pytest.raises(UsageError):
        prm_code(gf4, 1, 0)


@pytest.mark.parametrize("q, d, m, expected", [(4, 2, 2, 4), (4, 2, 3, 7), (5, 1, 2, 7)])
def test_prm_dual_degree(q, d, m, expected):
    assert prm_dual_degree(field_from_order(q), d, m) == expected


def test_prm_dual_degree_divisible(gf4):
    with pytest.raises(DegreeDivisible):
        prm_dual_degree(gf4, 3, 2)


def test_dual_code(gf4):
    code = prm_code(gf4, 2, 2)
    dual = dual_code(code)
    assert dual.k == code.n - code.k
    assert not matmul(gf4, code.generator, dual.generator.T).any()
    assert dual.label == "PRM_4(2,2)^perp"


def test_dual_code_is_prm_of_dual_degree(gf4):
    code = prm_code(gf4, 2, 2)
    other = prm_code(gf4, prm_dual_degree(gf4, 2, 2), 2)
    dual = dual_code(code)
    assert matrix_rank(gf4, dual.generator) == other.k
    stacked = list(dual.generator) + list(other.generator)
    assert matrix_rank(gf4, stacked) == other.k


@pytest.mark.parametrize("q, d", [(4, 1), (4, 2), (5, 1), (5, 2)])
def test_dual_min_distance(q, d):
    code = prm_code(field_from_order(q), d, 2)
    assert dual_min_distance_via_columns(code, d + 3) == d + 2


def test_dual_min_distance_not_found(gf4):
    result = dual_min_distance_via_columns(prm_code(gf4, 2, 2), 2)
    assert result == NotFoundBelow(2)
    assert str(result) == "> 2"
    with pytest.raises(UsageError):
        dual_min_distance_via_columns(prm_code(gf4, 2, 2), 0)


def test_linear_code_reduces_rows(gf5):
    code = linear_code(gf5, [[1, 2, 3], [2, 4, 1], [3, 1, 4]], "toy")
    # third row is the sum of the first two
    assert code.k == 2
    assert code.n == 3
