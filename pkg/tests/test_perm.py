import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from srl.perm import (
    commutator, conj, cycle_type, cycles, format_cycles, from_cycles, identity, inv, is_even,
    moved_points, mul, mul_many, parse_cycles, perm_order, power,
)
from strategies import perms

triples = st.integers(1, 8).flatmap(lambda n: st.tuples(perms(n), perms(n), perms(n)))


def test_product_applies_left_factor_first():
    a = parse_cycles("(1,2)", 3)
    b = parse_cycles("(2,3)", 3)
    # point 1 -> 2 under a, then 2 -> 3 under b
    assert format_cycles(mul(a, b)) == "(1,3,2)"


def test_conjugation_is_right_action():
    x = parse_cycles("(1,2,3)", 5)
    g = parse_cycles("(1,4,2,5,3)", 5)
    assert conj(x, g) == mul_many(inv(g), x, g)
    assert format_cycles(mul(x, conj(x, g))) == "(1,2,3,4,5)"


@given(triples)
def test_associative(abc):
    a, b, c = abc
    assert mul(mul(a, b), c) == mul(a, mul(b, c))


@given(st.integers(1, 9).flatmap(perms))
def test_inverse_and_identity(a):
    e = identity(len(a))
    assert mul(a, inv(a)) == e == mul(inv(a), a)
    assert mul(a, e) == a


@given(st.integers(1, 9).flatmap(perms))
def test_order_is_lcm_of_cycle_lengths(a):
    k = perm_order(a)
    assert k == math.lcm(*cycle_type(a)) if cycle_type(a) else k == 1
    assert power(a, k) == identity(len(a))
    assert all(power(a, j) != identity(len(a)) for j in range(1, k))


@given(st.integers(1, 9).flatmap(perms), st.integers(-12, 12))
def test_power_matches_repeated_product(a, k):
    expected = identity(len(a))
    step = a if k >= 0 else inv(a)
    for _ in range(abs(k)):
        expected = mul(expected, step)
    assert power(a, k) == expected


@given(st.integers(1, 9).flatmap(perms))
def test_cycle_string_round_trip(a):
    assert parse_cycles(format_cycles(a), len(a)) == a
    assert from_cycles(len(a), cycles(a)) == a


@given(triples)
def test_conjugation_is_an_automorphism(abc):
    a, b, g = abc
    assert conj(mul(a, b), g) == mul(conj(a, g), conj(b, g))
    assert perm_order(conj(a, g)) == perm_order(a)
    assert cycle_type(conj(a, g)) == cycle_type(a)


@given(triples)
def test_parity_is_a_homomorphism(abc):
    a, b, _ = abc
    assert is_even(mul(a, b)) == (is_even(a) == is_even(b))
    assert is_even(commutator(a, b))


def test_moved_points_and_identity_format():
    assert format_cycles(identity(4)) == "()"
    assert moved_points(parse_cycles("(2,4)", 5)) == [1, 3]


@pytest.mark.parametrize("text", ["(1,2", "(0,1)", "(1,1)", "(a,b)"])
def test_parse_rejects_malformed(text):
    with pytest.raises(ValueError):
        parse_cycles(text, 4)
