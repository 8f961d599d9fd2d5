from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import INSTANCES
from srl.atlas import build
from srl.conjugacy import class_intersection, class_survey, conjugacy_class, point_stabilizer
from srl.counting import (
    CountingInstance, SubgroupTerm, commutator_class_count, commutator_order_counts,
    commutator_order_counts_by_class, counting_check, field_auto_bound_audit, union_bound_check,
)
from srl.errors import InvalidFamilyParams
from srl.group import PermutationGroup
from srl.perm import parse_cycles, perm_order
from srl.verifier import WitnessQuery, pair_witness


def test_remark_instance():
    inst = CountingInstance.load(INSTANCES / "psu35_remark.json")
    verdict = counting_check(inst, "remark")
    assert (verdict.lhs, verdict.rhs, verdict.holds) == (Fraction(3024, 5), Fraction(403), True)
    assert verdict.margin == Fraction(1009, 5)


def test_degenerate_whole_group_instance_fails():
    verdict = counting_check(CountingInstance.load(INSTANCES / "a5_whole_group.json"), "full")
    assert (verdict.lhs, verdict.rhs, verdict.holds) == (400, 400, False)


def test_a5_a4_instance():
    inst = CountingInstance.load(INSTANCES / "a5_a4.json")
    verdict = counting_check(inst, "full")
    assert (verdict.lhs, verdict.rhs, verdict.holds) == (400, 320, True)
    assert inst.fixed_counts() == [2]


@pytest.mark.parametrize("bad", [
    {"group_order": 60, "class_size": 7, "subgroups": []},
    {"group_order": 60, "class_size": 20, "subgroups": [{"label": "X", "intersection": 8, "index": 7}]},
    {"group_order": 60, "class_size": 20, "subgroups": [{"label": "X", "intersection": 30, "index": 5}]},
    {"group_order": 0, "class_size": 1, "subgroups": []},
])
def test_invalid_instances(bad):
    with pytest.raises(ValueError):
        CountingInstance.from_dict(bad)


@st.composite
def instances(draw):
    order = draw(st.integers(1, 10**6))
    divisors = [d for d in range(1, min(order, 5000) + 1) if order % d == 0]
    size = draw(st.sampled_from(divisors))
    terms = []
    for i in range(draw(st.integers(0, 4))):
        index = draw(st.sampled_from(divisors))
        terms.append(SubgroupTerm(f"X{i}", draw(st.integers(0, min(size, order // index))), index))
    return CountingInstance(order, size, terms)


@given(instances())
def test_counting_is_exact(inst):
    full = counting_check(inst, "full")
    remark = counting_check(inst, "remark")
    for v in (full, remark):
        assert isinstance(v.lhs, Fraction) and isinstance(v.rhs, Fraction)
        assert v.holds == (v.margin > 0)
    assert full.lhs == inst.class_size**2
    assert remark.lhs * inst.centralizer_order**2 == inst.group_order
    assert CountingInstance.from_dict(inst.to_dict()) == inst


def _overgroup_terms(G, cls, subgroups):
    return [SubgroupTerm(str(i), class_intersection(cls, X), G.order() // X.order())
            for i, X in enumerate(subgroups)]


def test_criterion_predicts_generating_pairs_a5():
    # maximal subgroups of A5 containing a 3-cycle: A4 and S3
    G = build("Alt(5)").group
    x = parse_cycles("(1,2,3)", 5)
    cls = conjugacy_class(G, x)
    S3 = PermutationGroup([x, parse_cycles("(1,2)(4,5)", 5)], degree=5)
    terms = _overgroup_terms(G, cls, [point_stabilizer(G, 4), S3])
    assert [(t.intersection, t.index) for t in terms] == [(8, 5), (2, 10)]
    verdict = counting_check(CountingInstance(60, cls.size, terms), "full")
    assert verdict.holds
    assert pair_witness(WitnessQuery(G, x, target="full_group")).subgroup_order == 60


def test_criterion_predicts_generating_pairs_psl27():
    # the only maximal subgroups containing elements of order 7 are Borels
    built = build("PSL(2,7)")
    G = built.group
    cls = next(c for c in class_survey(G) if c.element_order == 7)
    borel = point_stabilizer(G, next(p for p in range(G.degree) if cls.representative[p] == p))
    assert borel.order() == 21
    terms = _overgroup_terms(G, cls, [borel])
    assert counting_check(CountingInstance(168, cls.size, terms), "full").holds
    assert pair_witness(WitnessQuery(G, cls.representative, target="full_group")).subgroup_order == 168


def _find_subgroup(G, order):
    elements = sorted(G.elements())
    for a in elements:
        for b in elements:
            if PermutationGroup([a, b], degree=G.degree).order() == order:
                return PermutationGroup([a, b], degree=G.degree)
    raise AssertionError("no such subgroup")


def test_union_bound_a5_a4():
    G = build("Alt(5)").group
    cls = conjugacy_class(G, parse_cycles("(1,2,3)", 5))
    ub = union_bound_check(G, cls, [point_stabilizer(G, 4)])
    assert (ub.union, ub.bound, ub.n, ub.union_all, ub.sum_all) == (14, 16, [2], 20, 40)
    assert ub.holds


def test_union_bound_psl27_s4():
    G = build("PSL(2,7)").group
    S4 = _find_subgroup(G, 24)
    for cls in class_survey(G):
        if cls.element_order in (3, 4):
            ub = union_bound_check(G, cls, [S4])
            assert ub.union <= ub.bound and ub.union_all <= ub.sum_all


@pytest.mark.parametrize("text,x_order,target,count", [("PSL(2,7)", 3, 4, 36), ("PSL(2,11)", 3, 5, 288)])
def test_commutator_counts(text, x_order, target, count):
    G = build(text).group
    cls = next(c for c in class_survey(G) if c.element_order == x_order)
    x = cls.representative
    sweep = commutator_order_counts(G, x)
    assert sweep == commutator_order_counts_by_class(G, x, cls)
    assert sum(sweep.values()) == G.order()
    assert sweep[1] == cls.centralizer_order
    assert commutator_class_count(G, x, target) == count


@pytest.mark.parametrize("family,q0,p,lhs,terms,holds", [
    ("PSL2", 3, 3, Fraction(819), [24, 468, 42], True),
    ("PSL2", 2, 3, Fraction(84), [6, 84, 6], False),
    ("SzB2", 2, 3, Fraction(364, 5), None, True),
    ("ReeG2", 3, 3, Fraction(246753, 56), None, True),
])
def test_field_automorphism_audits(family, q0, p, lhs, terms, holds):
    audit = field_auto_bound_audit(family, q0, p)
    assert audit.class_size == lhs and audit.holds == holds
    if terms is not None:
        assert [t for _, t in audit.terms] == terms
        assert audit.bound == sum(terms)


def test_audit_bounds_are_frozen():
    assert field_auto_bound_audit("SzB2", 2, 3).bound == Fraction(1627, 25)
    assert field_auto_bound_audit("ReeG2", 3, 3).bound == Fraction(73261, 196)


@pytest.mark.parametrize("family,q0,p", [("PSL2", 3, 2), ("PSL2", 6, 3), ("SzB2", 4, 3), ("ReeG2", 9, 3),
                                         ("E8", 2, 3), ("PSL2", 3, 4)])
def test_audit_rejects_bad_parameters(family, q0, p):
    with pytest.raises(InvalidFamilyParams):
        field_auto_bound_audit(family, q0, p)
