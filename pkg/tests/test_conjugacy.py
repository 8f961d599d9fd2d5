import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from srl.atlas import build
from srl.conjugacy import (
    class_intersection, class_survey, conjugacy_class, fixed_conjugate_count, normalizer_order,
    point_stabilizer, solvable_radical, subgroup_conjugates,
)
from srl.errors import ClassTooLarge
from srl.group import PermutationGroup, is_solvable, normal_closure
from srl.perm import conj, mul, parse_cycles
from strategies import perm_lists

SMALL = ["Alt(5)", "Sym(4)", "Sym(5)", "SL(2,3)", "GL(2,3)", "PSL(2,7)", "Direct(Alt(5),Cyclic(3))",
         "GU(3,2)", "Direct(Alt(5),Sym(3))", "PSL(2,8)"]
MEDIUM = ["Wreath(Alt(5),2)", "PSL(3,3)", "PSU(3,3)", "PSp(4,3)", "PGU(4,2)", "Alt(8)", "PSL(2,49)"]


@given(perm_lists(max_degree=6), st.integers(0, 1000))
def test_class_sizes_sum_to_group_order_random_groups(case, seed):
    n, gens = case
    G = PermutationGroup(gens, degree=n)
    classes = class_survey(G, seed)
    assert sum(c.size for c in classes) == G.order()
    members = [y for c in classes for y in c.members]
    assert len(members) == len(set(members)) == G.order()


@pytest.mark.parametrize("text", SMALL + MEDIUM)
def test_class_sizes_sum_to_group_order(text):
    G = build(text).group
    classes = class_survey(G, seed=1)
    assert sum(c.size for c in classes) == G.order()
    for c in classes:
        assert c.size * c.centralizer_order == G.order()
        assert c.representative == min(c.members)


@pytest.mark.parametrize("text", SMALL[:7])
def test_centralizer_orders_by_brute_force(text):
    G = build(text).group
    elements = list(G.elements())
    for c in class_survey(G):
        x = c.representative
        assert c.centralizer_order == sum(1 for g in elements if mul(g, x) == mul(x, g))


@pytest.mark.parametrize("text", ["PSL(2,7)", "Wreath(Alt(5),2)"])
def test_conjugators_rebuild_members(text):
    G = build(text).group
    for c in class_survey(G):
        for y in list(c.members)[:50]:
            assert conj(c.representative, c.conjugator(y)) == y


def test_class_cap():
    G = build("PSL(2,49)").group
    x = next(c.representative for c in class_survey(G) if c.size > 100)
    with pytest.raises(ClassTooLarge):
        conjugacy_class(G, x, cap=100)


# (group, order of the largest solvable normal subgroup)
RADICALS = [("Alt(5)", 1), ("Sym(4)", 24), ("SL(2,3)", 24), ("GL(2,3)", 48), ("Sym(5)", 1),
            ("Direct(Alt(5),Cyclic(3))", 3), ("Direct(Alt(5),Sym(3))", 6), ("Direct(Alt(5),Alt(4))", 12),
            ("Direct(PSL(2,7),Cyclic(5))", 5), ("Wreath(Alt(5),2)", 1), ("PSL(3,3)", 1), ("GU(3,2)", 648)]


@pytest.mark.parametrize("text,order", RADICALS)
def test_radical_orders(text, order):
    assert solvable_radical(build(text).group).order == order


@pytest.mark.parametrize("text", [t for t, _ in RADICALS if build(t).group.order() <= 10**4])
def test_radical_characterization_on_every_class(text):
    G = build(text).group
    classes = class_survey(G)
    R = solvable_radical(G, classes)
    for c in classes:
        x = c.representative
        assert R.contains(x) == is_solvable(normal_closure(G, [x]))


def test_subgroup_conjugates_and_fixed_counts():
    G = build("Alt(5)").group
    A4 = point_stabilizer(G, 4)
    conjugates = subgroup_conjugates(G, A4)
    assert len(conjugates) == 5 and normalizer_order(G, A4) == 12
    three = conjugacy_class(G, parse_cycles("(1,2,3)", 5))
    assert class_intersection(three, A4) == 8
    assert fixed_conjugate_count(three, A4, 5) == (2, True)
    assert sum(1 for Y in conjugates if Y.contains(three.representative)) == 2


@settings(max_examples=15)
@given(st.sampled_from(["Alt(5)", "PSL(2,7)", "Sym(4)", "Alt(6)"]), st.integers(0, 30), st.data())
def test_fixed_conjugate_counts_are_integral(text, point, data):
    G = build(text).group
    X = point_stabilizer(G, point % G.degree)
    index = G.order() // X.order()
    classes = class_survey(G)
    c = data.draw(st.sampled_from(classes))
    n, integral = fixed_conjugate_count(c, X, index)
    assert integral
    assert n == sum(1 for Y in subgroup_conjugates(G, X) if Y.contains(c.representative))
