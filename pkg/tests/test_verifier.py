import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from srl.atlas import build, distinguished_element
from srl.conjugacy import class_survey, conjugacy_class
from srl.errors import NotApplicable, PreconditionViolated
from srl.group import PermutationGroup, is_solvable
from srl.perm import conj, cycle_type, format_cycles, from_cycles, identity, mul, parse_cycles
from srl.verifier import (
    IN_RADICAL, NONE_BUDGET, NONE_EXHAUSTIVE, PAIR_WITNESS, TABLE1_EXCEPTION, VIOLATION, WITNESS_FOUND,
    WitnessQuery, alt_commutator, alt_witness, borel_commute_check, normalize_to_y, pair_witness,
    table1_match, theorem_a_survey, tuple_witness, wreath_lemma_check,
)
from srl.wreath import WreathElement, cycle_tau
from strategies import perms


def check_report(G, x, report):
    """Independent re-check of a reported witness."""
    assert report.status == WITNESS_FOUND
    assert [conj(x, g) for g in report.conjugators] == report.conjugates
    assert all(G.contains(g) for g in report.conjugators)
    H = PermutationGroup([x, *report.conjugates], degree=len(x))
    assert not is_solvable(H)
    assert H.order() == report.subgroup_order


def test_query_validation():
    G = build("Alt(5)").group
    three = parse_cycles("(1,2,3)", 5)
    with pytest.raises(ValueError):
        WitnessQuery(G, three, k=1)
    with pytest.raises(ValueError):
        WitnessQuery(G, three, mode="random")
    with pytest.raises(ValueError):
        WitnessQuery(G, three, budget=0)
    with pytest.raises(PreconditionViolated):
        WitnessQuery(G, parse_cycles("(1,2)(3,4)", 5))
    with pytest.raises(PreconditionViolated):
        WitnessQuery(G, parse_cycles("(1,2,4)(3,5)", 5))


def test_element_outside_group_rejected():
    G = build("Alt(5)").group
    odd = parse_cycles("(1,2,3,4)(5)", 5)
    with pytest.raises(PreconditionViolated):
        WitnessQuery(G, odd)


def test_pair_witness_in_a5():
    G = build("Alt(5)").group
    x = parse_cycles("(1,2,3)", 5)
    report = pair_witness(WitnessQuery(G, x))
    check_report(G, x, report)
    assert report.subgroup_order == 60 and report.class_size == 20


@pytest.mark.parametrize("text,kind,tested", [
    ("PSL(3,3)", "transvection", 103), ("PSU(3,3)", "transvection", 55), ("PSp(4,3)", "transvection", 39),
    ("PGU(4,2)", "unitary_reflection", 39),
])
def test_exception_classes_have_no_pair_witness(text, kind, tested):
    built = build(text)
    x = distinguished_element(built, kind).perm
    report = pair_witness(WitnessQuery(built.group, x))
    assert report.status == NONE_EXHAUSTIVE and report.tuples_tested == tested
    # every pair checked again, independently of the search loop
    cls = conjugacy_class(built.group, x)
    assert all(is_solvable(PermutationGroup([x, y], degree=len(x))) for y in cls.members)


def test_random_mode_is_seeded():
    built = build("PSL(2,11)")
    cls = next(c for c in class_survey(built.group) if c.element_order == 5)
    a = tuple_witness(WitnessQuery(built.group, cls.representative, 2, "random", 50, seed=3))
    b = tuple_witness(WitnessQuery(built.group, cls.representative, 2, "random", 50, seed=3))
    assert a.conjugators == b.conjugators and a.tuples_tested == b.tuples_tested
    check_report(built.group, cls.representative, a)


def test_random_mode_reports_budget_exhaustion():
    built = build("PSL(3,3)")
    x = distinguished_element(built, "transvection").perm
    report = tuple_witness(WitnessQuery(built.group, x, 2, "random", 20, seed=1))
    assert report.status == NONE_BUDGET and report.tuples_tested == 20


def test_parallel_exhaustive_search_finds_a_valid_witness():
    built = build("PSL(3,3)")
    x = distinguished_element(built, "transvection").perm
    report = tuple_witness(WitnessQuery(built.group, x, 3, "exhaustive", workers=2))
    check_report(built.group, x, report)


def test_full_group_target():
    built = build("PSL(2,7)")
    x = next(c.representative for c in class_survey(built.group) if c.element_order == 7)
    report = tuple_witness(WitnessQuery(built.group, x, 2, target="full_group"))
    assert report.subgroup_order == 168


def test_table1_rows():
    assert table1_match(build("PSL(3,3)"), distinguished_element(build("PSL(3,3)"), "transvection").perm)
    assert "PSU(n,2)" in table1_match(build("PGU(4,2)"),
                                      distinguished_element(build("PGU(4,2)"), "unitary_reflection").perm)
    siegel = distinguished_element(build("OmegaPlus(6,3)"), "siegel").perm
    assert "PSL(n,3)" in table1_match(build("OmegaPlus(6,3)"), siegel)
    assert table1_match(build("Alt(5)"), parse_cycles("(1,2,3)", 5)) is None
    x7 = next(c.representative for c in class_survey(build("PSL(2,7)").group) if c.element_order == 3)
    assert table1_match(build("PSL(2,7)"), x7) is None


def test_survey_verdicts():
    verdicts = theorem_a_survey("Alt(6)")
    assert {v.prime for v in verdicts} == {3, 5}
    assert all(v.verdict == PAIR_WITNESS for v in verdicts)
    direct = theorem_a_survey("Direct(Alt(5),Cyclic(3))", min_prime=3)
    central = [v for v in direct if v.cls.size == 1]
    assert central and all(v.verdict == IN_RADICAL for v in central)
    assert not any(v.verdict == VIOLATION for v in direct)


def test_survey_exception_escalates():
    verdicts = theorem_a_survey("PSL(3,3)", min_prime=3)
    exc = [v for v in verdicts if v.verdict == TABLE1_EXCEPTION]
    assert len(exc) == 1 and exc[0].cls.size == 104
    assert exc[0].escalation[0].status == WITNESS_FOUND and exc[0].escalation[0].subgroup_order == 5616


# -- alternating groups ----------------------------------------------------------------------


def test_a5_three_cycle_witness():
    x = parse_cycles("(1,2,3)", 5)
    g = alt_witness(5, x)
    assert format_cycles(g) == "(1,4,2,5,3)"
    assert format_cycles(mul(x, conj(x, g))) == "(1,2,3,4,5)"
    assert PermutationGroup([x, conj(x, g)], degree=5).order() == 60


@pytest.mark.parametrize("p", [5, 7, 11])
def test_p_cycle_commutator_is_a_three_cycle(p):
    for n in range(p, p + 3):
        x = from_cycles(n, [tuple(range(p))])
        g = alt_witness(n, x)
        c = alt_commutator(x, g)
        assert cycle_type(c) == (3,)
        assert not is_solvable(PermutationGroup([x, conj(x, g)], degree=n))


def test_alt_witness_preconditions():
    with pytest.raises(NotApplicable):
        alt_witness(4, parse_cycles("(1,2,3)", 4))
    with pytest.raises(PreconditionViolated):
        alt_witness(6, parse_cycles("(1,2)(3,4)", 6))
    with pytest.raises(NotApplicable):
        alt_witness(6, parse_cycles("(1,2,3)(4,5,6)", 6))


# -- wreath constructions ------------------------------------------------------------------------


@settings(max_examples=30)
@given(st.integers(2, 4).flatmap(lambda t: st.lists(perms(5), min_size=t, max_size=t)))
def test_normalize_to_y(sigmas):
    t = len(sigmas)
    u, y = normalize_to_y(sigmas)
    x = WreathElement(tuple(sigmas), cycle_tau(t))
    normalized = x.conj_by(WreathElement.base(list(u)))
    assert normalized.components == (y,) + (identity(5),) * (t - 1)
    assert normalized.tau == cycle_tau(t)


def test_wreath_cases():
    A5 = build("Alt(5)").group
    a3 = wreath_lemma_check(A5, 3, None, "a_t3")
    assert not a3.solvable and a3.projections["equals l1"] and a3.projections["equals l2^-1"]
    y = parse_cycles("(1,2,3,4,5)", 5)
    a2 = wreath_lemma_check(A5, 2, y, "a_t2")
    assert not a2.solvable and a2.projections["x^2 == (y,y)"] and a2.projections["equals z"]
    b = wreath_lemma_check(A5, 2, None, "b")
    assert not b.solvable and b.projections["block 1 equals l1"] and b.projections["block 1 equals l2"]
    with pytest.raises(PreconditionViolated):
        wreath_lemma_check(A5, 2, None, "a_t3")


# -- Borel subgroups -----------------------------------------------------------------------------


@pytest.mark.parametrize("q", [5, 7, 11, 13])
def test_borel_unipotents_commute(q):
    assert borel_commute_check(q)


def test_borel_torus_elements_do_not_all_commute():
    assert not borel_commute_check(7, element_order=3)
