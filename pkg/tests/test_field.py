import pytest
from hypothesis import given
from hypothesis import strategies as st

from srl.errors import InvalidScalar, NotSemisimple
from srl.field import GF, FieldElement, PrimePowerField, is_prime, minimal_e, prime_power

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 81]


@st.composite
def field_triples(draw):
    F = GF(draw(st.sampled_from(ORDERS)))
    a, b, c = (draw(st.integers(0, F.order - 1)) for _ in range(3))
    return F, FieldElement(F, a), FieldElement(F, b), FieldElement(F, c)


@given(field_triples())
def test_field_axioms(case):
    F, a, b, c = case
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == F(0) and a + (-a) == F(0)
    if not a.is_zero():
        assert a * a.inverse() == F(1)


@given(field_triples())
def test_frobenius_is_additive_and_multiplicative(case):
    _, a, b, _ = case
    assert (a + b).frobenius() == a.frobenius() + b.frobenius()
    assert (a * b).frobenius() == a.frobenius() * b.frobenius()


@pytest.mark.parametrize("q", ORDERS)
def test_multiplicative_group_is_cyclic(q):
    F = GF(q)
    g = F.primitive
    powers = {F.power(g, e) for e in range(q - 1)}
    assert powers == set(range(1, q))
    assert all((q - 1) % F.mult_order(a) == 0 for a in range(1, q))


@pytest.mark.parametrize("q", ORDERS)
def test_every_element_is_a_root_of_x_to_the_q_minus_x(q):
    F = GF(q)
    assert all(F.power(a, q) == a for a in range(1, q))


@pytest.mark.parametrize("r", [2, 3, 5, 7, 9])
def test_unitary_involution_and_norm(r):
    F = GF(r * r)
    fixed = [a for a in range(F.order) if F.conj(a) == a]
    assert len(fixed) == r
    norms = {F.norm_sub(a) for a in range(1, F.order)}
    assert norms == set(fixed) - {0}
    assert all(F.conj(F.conj(a)) == a for a in range(F.order))


def test_prime_field_matches_integer_arithmetic():
    F = GF(13)
    for a in range(13):
        for b in range(13):
            assert (F(a) * F(b)).index == a * b % 13
            assert (F(a) + F(b)).index == (a + b) % 13


def test_prime_power_detection():
    assert prime_power(81) == (3, 4)
    assert prime_power(6) is None and prime_power(1) is None
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        PrimePowerField(3, 2, [1, 0, 1 + 1])  # x^2 + 2 = (x+1)(x+2) over GF(3)
    with pytest.raises(ValueError):
        GF(6)


def test_zero_has_no_inverse():
    with pytest.raises(InvalidScalar):
        GF(7).inverse(0)


def test_minimal_e():
    assert minimal_e(5, 3) == 4
    assert minimal_e(7, 2) == 3
    assert minimal_e(3, 4) == 1
    with pytest.raises(NotSemisimple):
        minimal_e(3, 9)
