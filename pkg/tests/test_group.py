import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from srl.conjugacy import point_stabilizer
from srl.group import (
    PermutationGroup, closure_by_enumeration, derived_series, derived_subgroup, is_abelian,
    is_nilpotent, is_normal, is_solvable, lower_central_series, normal_closure,
)
from srl.perm import conj, identity, mul, parse_cycles
from strategies import perm_lists


def named(n, *cycle_strings):
    return PermutationGroup([parse_cycles(c, n) for c in cycle_strings], degree=n)


S4 = lambda: named(4, "(1,2)", "(1,2,3,4)")
A5 = lambda: named(5, "(1,2,3)", "(1,2,3,4,5)")


@given(perm_lists())
def test_chain_order_matches_enumeration(case):
    n, gens = case
    G = PermutationGroup(gens, degree=n)
    elements = closure_by_enumeration(gens, n)
    assert G.order() == len(elements)
    assert set(G.elements()) == elements


@given(perm_lists(max_degree=6), st.randoms(use_true_random=False))
def test_membership_matches_enumeration(case, rng):
    n, gens = case
    G = PermutationGroup(gens, degree=n)
    elements = closure_by_enumeration(gens, n)
    for _ in range(10):
        p = list(range(n))
        rng.shuffle(p)
        assert G.contains(tuple(p)) == (tuple(p) in elements)


@given(perm_lists(max_degree=7), st.data())
def test_orbit_stabilizer(case, data):
    n, gens = case
    G = PermutationGroup(gens, degree=n)
    point = data.draw(st.integers(0, n - 1))
    stab = point_stabilizer(G, point)
    assert len(G.orbit(point)) * stab.order() == G.order()
    assert all(g[point] == point for g in stab.gens)


@given(perm_lists(max_degree=6), st.integers(0, 2**32))
def test_random_elements_are_members(case, seed):
    n, gens = case
    G = PermutationGroup(gens, degree=n)
    rng = random.Random(seed)
    assert all(G.contains(G.random_element(rng)) for _ in range(5))


@given(perm_lists(max_degree=5))
def test_derived_subgroup_is_normal_and_quotient_abelian(case):
    n, gens = case
    G = PermutationGroup(gens, degree=n)
    D = derived_subgroup(G)
    assert is_normal(G, D)
    elements = closure_by_enumeration(gens, n)
    commutators = {mul(mul(a, b), mul(_inv(a), _inv(b))) for a in elements for b in elements}
    assert D.order() == len(closure_by_enumeration(list(commutators), n))


def _inv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def test_solvability_of_small_groups():
    assert is_solvable(S4())
    assert not is_solvable(A5())
    assert [H.order() for H in derived_series(S4())] == [24, 12, 4, 1]
    assert not is_nilpotent(S4())
    assert is_nilpotent(named(4, "(1,2,3,4)", "(1,3)"))  # dihedral of order 8
    assert [H.order() for H in lower_central_series(named(4, "(1,2,3,4)", "(1,3)"))] == [8, 2, 1]
    assert is_abelian(named(6, "(1,2)", "(3,4,5)"))


def test_normal_closure_of_a_transposition_in_s4():
    G = S4()
    N = normal_closure(G, [parse_cycles("(1,2)", 4)])
    assert N.order() == 24
    V = normal_closure(G, [parse_cycles("(1,2)(3,4)", 4)])
    assert V.order() == 4 and is_normal(G, V)
    g = parse_cycles("(1,3)", 4)
    assert all(V.contains(conj(v, g)) for v in V.elements())


def test_trivial_group():
    G = PermutationGroup([], degree=3)
    assert G.order() == 1
    assert list(G.elements()) == [identity(3)]


def test_degree_cap():
    with pytest.raises(ValueError, match="exceeds cap"):
        PermutationGroup([identity(5000)], degree=5000)
