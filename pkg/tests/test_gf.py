import itertools

import numpy as np
import pytest

from errors import DivisionByZero, NotPrime, ReducibleModulus, UsageError
from gf import (
    FieldElement,
    enumerate_elements,
    field_arith,
    field_from_order,
    load_modulus_table,
    make_field,
    parse_modulus,
    prime_power,
)


@pytest.mark.parametrize("q, expected", [(2, (2, 1)), (8, (2, 3)), (9, (3, 2)), (25, (5, 2)), (31, (31, 1))])
def test_prime_power(q, expected):
    assert prime_power(q) == expected


@pytest.mark.parametrize("q", [1, 6, 12, 100])
def test_prime_power_rejects(q):
    with pytest.raises(NotPrime):
        prime_power(q)


def test_make_field_needs_prime_characteristic():
    with pytest.raises(NotPrime):
        make_field(4, 1)


def test_gf4_arithmetic(gf4):
    # modulus x^2 + x + 1, element 2 is x
    assert gf4.modulus == (1, 1, 1)
    assert gf4.add(2, 3) == 1
    assert gf4.mul(2, 2) == 3
    assert gf4.mul(2, 3) == 1
    assert gf4.inv(2) == 3
    assert gf4.neg(3) == 3
    assert gf4.div(1, 3) == 2


def test_prime_field_arithmetic(gf5):
    assert gf5.add(3, 4) == 2
    assert gf5.sub(1, 3) == 3
    assert gf5.mul(3, 4) == 2
    assert gf5.inv(2) == 3
    assert gf5.pow(2, 4) == 1
    assert gf5.pow(0, 0) == 1
    assert gf5.pow(2, -1) == 3


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16])
def test_field_axioms(q):
    F = field_from_order(q)
    for a in range(1, q):
        assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, q - 1) == 1
        assert F.add(a, F.neg(a)) == 0
    for a, b, c in itertools.product(range(q), repeat=3):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_primitive_generates_multiplicative_group(gf4, gf5):
    for F in (gf4, gf5):
        powers = {F.pow(F.primitive, i) for i in range(F.q - 1)}
        assert powers == set(range(1, F.q))


def test_vector_ops_match_scalar(gf4):
    a = np.array([0, 1, 2, 3, 2, 3])
    b = np.array([3, 3, 2, 1, 0, 2])
    assert gf4.vadd(a, b).tolist() == [gf4.add(x, y) for x, y in zip(a, b)]
    assert gf4.vmul(a, b).tolist() == [gf4.mul(x, y) for x, y in zip(a, b)]
    assert gf4.vsub(a, b).tolist() == [gf4.sub(x, y) for x, y in zip(a, b)]
    assert gf4.vinv(np.array([1, 2, 3])).tolist() == [1, 3, 2]


def test_field_without_tables():
    F = field_from_order(2 ** 11)
    assert not F.has_tables
    for a in (1, 2, 3, 1000, 2047):
        assert F.mul(a, F.inv(a)) == 1
    a = np.array([5, 17, 1999])
    assert F.vmul(a, a).tolist() == [F.mul(int(x), int(x)) for x in a]


def test_division_by_zero(gf4):
    with pytest.raises(DivisionByZero):
        gf4.inv(0)
    with pytest.raises(ZeroDivisionError):
        gf4.div(1, 0)
    with pytest.raises(DivisionByZero):
        gf4.vinv(np.array([1, 0]))


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulus):
        make_field(2, 2, (1, 0, 1))
    with pytest.raises(ReducibleModulus):
        make_field(2, 2, (1, 1, 0))


def test_explicit_modulus():
    F = field_from_order(9, (2, 2, 1))
    assert F.q == 9
    assert F.modulus == (2, 2, 1)
    assert all(F.mul(a, F.inv(a)) == 1 for a in range(1, 9))


def test_parse_modulus():
    assert parse_modulus("1,1,1") == (1, 1, 1)
    assert parse_modulus(" 2, 0, 1 ") == (2, 0, 1)
    with pytest.raises(UsageError):
        parse_modulus("1,x,1")


def test_modulus_table_entries_construct():
    for (p, e), coeffs in load_modulus_table().items():
        if p ** e > 256:
            continue
        F = make_field(p, e)
        assert F.modulus == coeffs


def test_modulus_table_covers_prime_powers_to_1024():
    table = load_modulus_table()
    for q in range(4, 1025):
        try:
            p, e = prime_power(q)
        except NotPrime:
            continue
        if e > 1:
            assert (p, e) in table, f"GF({q}) missing"


def test_gf729_from_table():
    F = make_field(3, 6)
    assert F.modulus == (2, 2, 1, 0, 2, 0, 1)
    assert F.q == 729
    assert F.mul(F.primitive, F.inv(F.primitive)) == 1


def test_field_elements(gf4):
    elems = enumerate_elements(gf4)
    assert [int(x) for x in elems] == [0, 1, 2, 3]
    x = FieldElement(gf4, 2)
    assert int(x * x) == 3
    assert int(x + 1) == 3
    assert int(x / x) == 1
    assert int(x ** 3) == 1
    assert int(field_arith(x, FieldElement(gf4, 3), "mul")) == 1
    assert int(field_arith(x, None, "inv")) == 3
    assert int(field_arith(x, None, "neg")) == 2
    with pytest.raises(UsageError):
        field_arith(x, x, "mod")
    with pytest.raises(UsageError):
        x + FieldElement(field_from_order(5), 1)
