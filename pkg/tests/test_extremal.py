import pytest

from bounds import tbc_simplified
from errors import HypothesisViolated, RankOutOfRange, UsageError
from extremal import (
    WitnessSystem,
    build_five_quadrics_witness,
    build_pencil_witness,
    custom_witness,
    veronese_image,
    veronese_line_check,
    verify_witness,
)
from gf import field_from_order
from poly import monomial_poly, parse_poly


def test_pencil_witness(gf5):
    W = build_pencil_witness(gf5, 3, 2, 2)
    assert W.claimed_count == 12
    assert W.verified
    assert (W.degree, W.r) == (3, 2)


@pytest.mark.parametrize("q, d, m", [(4, 2, 2), (4, 2, 3), (5, 3, 2), (4, 1, 2)])
def test_pencil_matches_closed_form(q, d, m):
    F = field_from_order(q)
    for r in range(1, m + 2):
        W = build_pencil_witness(F, d, m, r)
        assert W.verified
        assert W.claimed_count == tbc_simplified(q, d, m, r)


def test_pencil_preconditions(gf4):
    with pytest.raises(RankOutOfRange):
        build_pencil_witness(gf4, 2, 2, 4)
    with pytest.raises(HypothesisViolated):
        build_pencil_witness(gf4, 5, 2, 1)


@pytest.mark.parametrize("q, expected", [(4, 9), (5, 11), (7, 15)])
def test_five_quadrics(q, expected):
    W = build_five_quadrics_witness(field_from_order(q))
    assert W.claimed_count == expected
    assert W.verified
    assert W.r == 5
    assert not W.notes


def test_five_quadrics_small_field_note(gf3):
    W = build_five_quadrics_witness(gf3)
    assert W.claimed_count == 7
    assert W.notes


def test_verify_witness_rejects_wrong_count(gf4):
    polys = [monomial_poly(gf4, (1, 1, 0)), monomial_poly(gf4, (1, 0, 1))]
    with pytest.raises(HypothesisViolated):
        verify_witness(WitnessSystem(gf4, 2, polys, 7, "bad"))


def test_verify_witness_rejects_dependent_polys(gf4):
    P = parse_poly(gf4, "1:1,1,0")
    Q = parse_poly(gf4, "2:1,1,0")
    with pytest.raises(HypothesisViolated):
        verify_witness(WitnessSystem(gf4, 2, [P, Q], 9, "bad"))


def test_verify_witness_rejects_mixed_degrees(gf4):
    polys = [parse_poly(gf4, "1:1,0,0"), parse_poly(gf4, "1:1,1,0")]
    with pytest.raises(UsageError):
        verify_witness(WitnessSystem(gf4, 2, polys, 0, "bad"))
    with pytest.raises(UsageError):
        verify_witness(WitnessSystem(gf4, 2, [], 0, "empty"))


def test_custom_witness_counts(gf4):
    W = custom_witness(gf4, 2, [parse_poly(gf4, "1:1,1,0"), parse_poly(gf4, "1:1,0,1")])
    assert W.claimed_count == 6
    assert W.construction == "custom"


def test_veronese_linear_map_keeps_all_lines(gf4):
    image = veronese_image(gf4, 1, 2)
    assert len(image) == 21
    check = veronese_line_check(image)
    assert check.lines_found == 21
    assert check.example is not None


@pytest.mark.parametrize("q", [4, 5])
def test_quadratic_veronese_has_no_lines(q):
    image = veronese_image(field_from_order(q), 2, 2)
    assert image.ambient_dimension == 5
    check = veronese_line_check(image)
    assert check.lines_found == 0
    assert check.to_dict() == {"lines_found": 0, "example": None}


def test_veronese_line_in_projective_line(gf3):
    # the identity on P^1 is itself a single line
    assert veronese_line_check(veronese_image(gf3, 1, 1)).lines_found == 1


def test_veronese_rejects_degree_zero(gf4):
    with pytest.raises(UsageError):
        veronese_image(gf4, 0, 2)
