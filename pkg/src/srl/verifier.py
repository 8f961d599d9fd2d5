"""Non-solvable witness searches and per-class verdicts.

A witness for ``x`` and ``k`` is a list of conjugates ``x^{g_1}, ...,
x^{g_{k-1}}`` such that ``<x, x^{g_1}, ...>`` is not solvable (or, with
``target="full_group"``, equals G). Exhaustive searches range over members
of the class of ``x``: since ``<x, x^g>`` depends on ``x^g`` only, this
covers every choice of conjugators. Tuples are taken as sorted combinations
of distinct members other than ``x``, as the generated subgroup ignores
order and repeats.
"""

from __future__ import annotations

import itertools
import logging
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from .atlas import BuiltGroup, build, element_kind
from .conjugacy import (ConjugacyClass, class_survey, conjugacy_class,
                        point_stabilizer, solvable_radical)
from .errors import (ClassTooLarge, GeneratingPairNotFound, NotApplicable,
                     PreconditionViolated)
from .field import is_prime
from .group import PermutationGroup, is_solvable
from .perm import (Perm, conj, cycles, format_cycles, from_cycles, identity,
                   inv, mul, mul_many, perm_order, power)
from .wreath import WreathElement, WreathProduct, cycle_tau

log = logging.getLogger(__name__)

WITNESS_FOUND = "WITNESS_FOUND"
NONE_EXHAUSTIVE = "NONE_EXHAUSTIVE"
NONE_BUDGET = "NONE_BUDGET"
EXCEPTION_MATCHED = "EXCEPTION_MATCHED"

DEFAULT_BUDGET = 10**4


@dataclass
class WitnessQuery:
    group: PermutationGroup
    x: Perm
    k: int = 2
    mode: str = "exhaustive"  # exhaustive | random
    budget: int = DEFAULT_BUDGET
    seed: int | None = None
    target: str = "nonsolvable"  # nonsolvable | full_group
    workers: int = 1

    def __post_init__(self):
        self.x = tuple(self.x)
        if self.k < 2:
            raise ValueError("k must be at least 2")
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "random" and self.seed is None:
            raise ValueError("random mode needs a seed")
        if self.budget < 1:
            raise ValueError("budget must be positive")
        if self.target not in ("nonsolvable", "full_group"):
            raise ValueError(f"unknown target {self.target!r}")
        p = perm_order(self.x)
        if p % 2 == 0 or not is_prime(p):
            raise PreconditionViolated(f"x has order {p}, not an odd prime")


@dataclass
class WitnessReport:
    status: str
    k: int
    mode: str
    seed: int | None
    x: Perm
    class_size: int | None = None
    conjugators: list = dc_field(default_factory=list)
    conjugates: list = dc_field(default_factory=list)
    subgroup_order: int | None = None
    solvable: bool | None = None
    tuples_tested: int = 0
    elapsed_ms: float = 0.0
    target: str = "nonsolvable"

    @property
    def found(self) -> bool:
        return self.status == WITNESS_FOUND

    def to_json(self, group: str = "", timing: bool = False) -> dict:
        out = {
            "record": "witness",
            "group": group,
            "class": {"rep": format_cycles(self.x), "order": perm_order(self.x), "size": self.class_size},
            "k": self.k,
            "mode": self.mode,
            "seed": self.seed,
            "target": self.target,
            "status": self.status,
            "witness": [format_cycles(g) for g in self.conjugators],
            "conjugates": [format_cycles(y) for y in self.conjugates],
            "subgroup_order": self.subgroup_order,
            "solvable": self.solvable,
            "tuples_tested": self.tuples_tested,
        }
        if timing:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


def _hit(x: Perm, ys, target: str, order: int) -> tuple[bool, int, bool]:
    H = PermutationGroup([x, *ys], degree=len(x))
    h = H.order()
    if target == "full_group":
        return h == order, h, None if h != order else False
    solv = is_solvable(H)
    return not solv, h, solv


def _scan(args) -> tuple[int, list | None, int]:
    """Worker: test the combinations with global index in ``indices``; first hit wins."""
    gens, degree, x, members, k, target, start, stride = args
    G = PermutationGroup(gens, degree=degree)
    order = G.order()
    tested = 0
    for idx, ys in enumerate(itertools.combinations(members, k - 1)):
        if idx % stride != start:
            continue
        tested += 1
        ok, _, _ = _hit(x, ys, target, order)
        if ok:
            return idx, list(ys), tested
    return -1, None, tested


def _verify(G: PermutationGroup, x: Perm, conjugators: list, target: str) -> tuple[int, bool]:
    """Rebuild the witness subgroup from scratch and re-check it."""
    ys = [conj(x, g) for g in conjugators]
    for g in conjugators:
        if not G.contains(g):
            raise AssertionError("witness conjugator outside the group")
    H = PermutationGroup([x, *ys], degree=len(x))
    solv = is_solvable(H)
    if solv or (target == "full_group" and H.order() != G.order()):
        raise AssertionError("witness failed re-verification")
    return H.order(), solv


def tuple_witness(q: WitnessQuery, cls: ConjugacyClass | None = None) -> WitnessReport:
    """Search for k-1 conjugates of x generating, with x, a non-solvable group (or G)."""
    t0 = time.perf_counter()
    G, x, k = q.group, q.x, q.k
    order = G.order()
    if not G.contains(x):
        raise PreconditionViolated("x is not in the group")
    mode = q.mode
    if mode == "exhaustive" and (cls is None or cls.representative != x):
        try:
            cls = conjugacy_class(G, x)
        except ClassTooLarge:
            log.warning("class too large for exhaustive search; falling back to random mode")
            mode = "random"
    rep = WitnessReport(NONE_BUDGET, k, mode, q.seed, x, cls.size if cls else None, target=q.target)
    if mode == "random" and q.seed is None:
        rep.seed = q.seed = 0
    if mode == "exhaustive":
        members = sorted(y for y in cls.members if y != x)
        found_ys = None
        if q.workers > 1:
            G._ensure()
            jobs = [(list(G.gens), G.degree, x, members, k, q.target, i, q.workers) for i in range(q.workers)]
            with ProcessPoolExecutor(max_workers=q.workers) as ex:
                results = list(ex.map(_scan, jobs))
            rep.tuples_tested = sum(r[2] for r in results)
            hits = [r for r in results if r[0] >= 0]
            if hits:
                found_ys = min(hits)[1]
        else:
            for ys in itertools.combinations(members, k - 1):
                rep.tuples_tested += 1
                ok, _, _ = _hit(x, ys, q.target, order)
                if ok:
                    found_ys = list(ys)
                    break
        if found_ys is None:
            rep.status = NONE_EXHAUSTIVE
            rep.solvable = q.target == "nonsolvable" or None
        else:
            rep.conjugators = [cls.conjugator(y) for y in found_ys]
    else:
        rng = random.Random(q.seed)
        for _ in range(q.budget):
            gs = [G.random_element(rng) for _ in range(k - 1)]
            rep.tuples_tested += 1
            ok, _, _ = _hit(x, [conj(x, g) for g in gs], q.target, order)
            if ok:
                rep.conjugators = gs
                break
    if rep.conjugators:
        rep.status = WITNESS_FOUND
        rep.conjugates = [conj(x, g) for g in rep.conjugators]
        rep.subgroup_order, rep.solvable = _verify(G, x, rep.conjugators, q.target)
    rep.elapsed_ms = (time.perf_counter() - t0) * 1000
    return rep


def pair_witness(q: WitnessQuery, cls: ConjugacyClass | None = None) -> WitnessReport:
    if q.k != 2:
        raise ValueError("pair_witness needs k = 2")
    return tuple_witness(q, cls)


# -- exception table -------------------------------------------------------------------

# (socle type, minimum dimension, field size, element kind, label)
TABLE1 = [
    ("PSL", 3, 3, "transvection", "PSL(n,3), n>2, transvection"),
    ("PSp", 4, 3, "transvection", "PSp(2n,3), n>1, transvection"),
    ("PSU", 3, 3, "transvection", "PSU(n,3), n>2, transvection"),
    ("PSU", 4, 2, "reflection", "PSU(n,2), n>3, reflection of order 3"),
    ("POmegaPlus", 7, 3, "long_root", "POmega(n,3), n>6, long root element"),
    ("POmegaMinus", 7, 3, "long_root", "POmega(n,3), n>6, long root element"),
]
# low-rank isomorphisms: the orthogonal 6-dimensional groups are linear/unitary 4-dimensional
ISOMORPHIC_ROWS = {
    ("POmegaPlus", 6, 3, "long_root"): "PSL(n,3), n>2, transvection [via POmega+(6,3) = PSL(4,3)]",
    ("POmegaMinus", 6, 3, "long_root"): "PSU(n,3), n>2, transvection [via POmega-(6,3) = PSU(4,3)]",
}
UNSUPPORTED_ROWS = ["G2(3), long or short root element", "E_l(3), F4(3), 2E6(3), 3D4(3), long root element"]


def table1_match(built: BuiltGroup, x: Perm) -> str | None:
    """Label of the matching exception row, or None."""
    socle = built.socle_type
    if socle is None or perm_order(x) != 3:
        return None
    kind = element_kind(built, x)
    n, q = built.spec.n, built.spec.q
    for s, nmin, qq, kd, label in TABLE1:
        if socle == s and n >= nmin and q == qq and kind == kd:
            return label
    return ISOMORPHIC_ROWS.get((socle, n, q, kind))


# -- class survey -------------------------------------------------------------------------

PAIR_WITNESS = "PAIR_WITNESS"
TABLE1_EXCEPTION = "TABLE1_EXCEPTION"
VIOLATION = "VIOLATION"
IN_RADICAL = "IN_RADICAL"
INFEASIBLE = "INFEASIBLE"


@dataclass
class ClassVerdict:
    cls: ConjugacyClass
    prime: int
    verdict: str
    in_radical: bool
    pair: WitnessReport | None = None
    escalation: list = dc_field(default_factory=list)
    table1_row: str | None = None

    def to_json(self, group: str = "", timing: bool = False) -> dict:
        return {
            "record": "class_verdict",
            "group": group,
            "class": self.cls.to_json(),
            "prime": self.prime,
            "in_radical": self.in_radical,
            "verdict": self.verdict,
            "table1_row": self.table1_row,
            "pair": self.pair.to_json(group, timing) if self.pair else None,
            "escalation": [r.to_json(group, timing) for r in self.escalation],
        }


def theorem_a_survey(built: BuiltGroup | str, seed: int = 0, budget: int = DEFAULT_BUDGET,
                     escalate: bool = True, min_prime: int = 3) -> list[ClassVerdict]:
    """Verdict for every class of odd prime order (at least ``min_prime``)."""
    if isinstance(built, str):
        built = build(built)
    G = built.group
    classes = class_survey(G, seed)
    radical = solvable_radical(G, classes, seed)
    out = []
    for c in classes:
        p = c.element_order
        if p < max(3, min_prime) or not is_prime(p):
            continue
        x = c.representative
        if radical.contains(x):
            out.append(ClassVerdict(c, p, IN_RADICAL, True))
            continue
        pq = WitnessQuery(G, x, 2, "exhaustive", budget, seed)
        pr = pair_witness(pq, c)
        cv = ClassVerdict(c, p, "", False, pr)
        if pr.found:
            cv.verdict = PAIR_WITNESS
        elif pr.status == NONE_BUDGET:
            cv.verdict = INFEASIBLE
        else:
            row = table1_match(built, x) if p == 3 else None
            cv.table1_row = row
            if row is None:
                cv.verdict = VIOLATION
            else:
                cv.verdict = TABLE1_EXCEPTION
                if escalate:
                    cv.escalation = escalate_exception(G, x, c, seed, budget)
        out.append(cv)
    return out


def escalate_exception(G: PermutationGroup, x: Perm, cls: ConjugacyClass, seed: int,
                       budget: int = DEFAULT_BUDGET) -> list[WitnessReport]:
    """k = 3 (exhaustive when small) then k = 4 (random) searches for an exception class."""
    reports = []
    mode3 = "exhaustive" if math.comb(cls.size - 1, 2) <= 20000 else "random"
    r3 = tuple_witness(WitnessQuery(G, x, 3, mode3, budget, seed), cls)
    r3.status = EXCEPTION_MATCHED if not r3.found else r3.status
    reports.append(r3)
    if not r3.found:
        reports.append(tuple_witness(WitnessQuery(G, x, 4, "random", budget, seed), cls))
    return reports


# -- alternating groups -------------------------------------------------------------------


def alt_witness(n: int, x: Perm) -> Perm:
    """Conjugator g with <x, x^g> non-solvable, for x of odd prime order in A_n."""
    if n < 5:
        raise NotApplicable("alternating witnesses need n >= 5")
    x = tuple(x)
    if len(x) != n:
        raise ValueError("degree mismatch")
    cs = cycles(x)
    p = perm_order(x)
    if not cs or not is_prime(p) or p == 2 or any(len(c) != p for c in cs):
        raise PreconditionViolated("x must be a product of p-cycles for an odd prime p")
    first = cs[0]
    if p >= 5:
        # g = (1 2 3) on the first three points of the first p-cycle
        g = from_cycles(n, [first[:3]])
    else:
        if len(cs) > 1:
            raise NotApplicable("products of several 3-cycles reduce to a 3-cycle under Aut(A6)")
        others = [i for i in range(n) if i not in first]
        a1, a2, a3 = first
        a4, a5 = others[:2]
        g = from_cycles(n, [(a1, a4, a2, a5, a3)])
    H = PermutationGroup([x, conj(x, g)], degree=n)
    if is_solvable(H):
        raise AssertionError("alternating construction failed to verify")  # pragma: no cover
    return g


def alt_commutator(x: Perm, g: Perm) -> Perm:
    """x g x^-1 g^-1."""
    return mul_many(x, g, inv(x), inv(g))


# -- wreath products -------------------------------------------------------------------------


def generating_pair(L: PermutationGroup, seed: int = 0, budget: int = 1000) -> tuple[Perm, Perm]:
    rng = random.Random(seed)
    order = L.order()
    for _ in range(budget):
        a, b = L.random_element(rng), L.random_element(rng)
        if PermutationGroup([a, b], degree=L.degree).order() == order:
            return a, b
    raise GeneratingPairNotFound(f"no generating pair in {budget} tries")


def normalize_to_y(sigmas) -> tuple[tuple, Perm]:
    """Base element u with (sigma)tau conjugated by u equal to (y,1,...,1)tau.

    u_t = 1 and u_{i-1} = u_i sigma_i, so u_1 = sigma_t ... sigma_2 and
    y = sigma_t ... sigma_1.
    """
    t = len(sigmas)
    d = len(sigmas[0])
    u = [None] * t
    u[t - 1] = identity(d)
    for i in range(t - 1, 0, -1):
        u[i - 1] = mul(u[i], sigmas[i])
    y = mul(u[0], sigmas[0])
    return tuple(u), y


@dataclass
class WreathCheck:
    case: str
    t: int
    y: Perm
    l1: Perm
    l2: Perm | None
    conjugators: list
    subgroup_order: int
    solvable: bool
    projections: dict

    def to_json(self) -> dict:
        return {
            "record": "wreath_check",
            "case": self.case, "t": self.t, "y": format_cycles(self.y),
            "l1": format_cycles(self.l1), "l2": format_cycles(self.l2) if self.l2 else None,
            "conjugators": [[format_cycles(c) for c in g.components] for g in self.conjugators],
            "subgroup_order": self.subgroup_order, "solvable": self.solvable,
            "projections": {k: (format_cycles(v) if isinstance(v, tuple) else v) for k, v in self.projections.items()},
        }


def wreath_lemma_check(L: PermutationGroup, t: int, y: Perm | None, case: str, seed: int = 0) -> WreathCheck:
    """Run the explicit conjugator constructions for L wr S_t and verify them.

    Conjugation here is ``x^g = g x g^-1`` in the wreath-element algebra.
    """
    d = L.degree
    one = identity(d)
    y = tuple(y) if y is not None else one
    wp = WreathProduct(L, t)
    tau = cycle_tau(t)
    l1, l2 = generating_pair(L, seed)

    def base(*comps):
        return WreathElement.base(list(comps))

    if case == "a_t3":
        if t < 3:
            raise PreconditionViolated("case a_t3 needs t >= 3")
        x = WreathElement((y,) + (one,) * (t - 1), tau)
        w = [one] * t
        w[1] = l1
        w[t - 1] = mul_many(inv(y), l2, y)
        g = base(*w)
        xg = x.conj_by(g)
        c1 = x.inverse() * xg
        c2 = xg * x.inverse()
        projections = {"x^-1 x^g block 1": c1.components[0], "x^g x^-1 block 1": c2.components[0],
                       "equals l1": c1.components[0] == l1,
                       "equals l2^-1": c2.components[0] == inv(l2)}
        gens = [x, xg]
        conjugators = [g]
    elif case == "a_t2":
        if t != 2:
            raise PreconditionViolated("case a_t2 needs t = 2")
        if y == one:
            raise PreconditionViolated("case a_t2 needs y != 1")
        x = WreathElement((y, one), tau)
        sq = x * x
        # z with <y, z> = L; k = 1 so l = y^-1 z
        z = next((b for b in (l1, l2, *_random_elements(L, seed, 200))
                  if PermutationGroup([y, b], degree=d).order() == L.order()), None)
        if z is None:
            raise GeneratingPairNotFound("no z with <y, z> = L")
        lz = mul(inv(y), z)
        g = base(one, lz)
        xg = x.conj_by(g)
        prod = x * xg
        projections = {"x^2 == (y,y)": sq.components == (y, y) and sq.is_base(),
                       "x x^g block 1": prod.components[0], "equals z": prod.components[0] == z}
        gens = [x, xg]
        conjugators = [g]
        l2 = z
    elif case == "b":
        if t != 2:
            raise PreconditionViolated("case b needs t = 2")
        x = WreathElement.top(tau, d)
        g1, g2 = base(one, l1), base(one, l2)
        xg1, xg2 = x.conj_by(g1), x.conj_by(g2)
        c1 = x.inverse() * xg1
        c2 = x.inverse() * xg2
        projections = {"x^-1 x^g1": [format_cycles(c) for c in c1.components],
                       "x^-1 x^g2": [format_cycles(c) for c in c2.components],
                       "block 1 equals l1": c1.components[0] == l1,
                       "block 1 equals l2": c2.components[0] == l2}
        gens = [x, xg1, xg2]
        conjugators = [g1, g2]
    else:
        raise ValueError(f"unknown case {case!r}")
    H = PermutationGroup([wp.encode_element(e) for e in gens], degree=wp.t * d)
    return WreathCheck(case, t, y, l1, l2, conjugators, H.order(), is_solvable(H), projections)


def _random_elements(L: PermutationGroup, seed: int, count: int):
    rng = random.Random(seed + 1)
    for _ in range(count):
        yield L.random_element(rng)


# -- Borel subgroups ---------------------------------------------------------------------------


def borel_commute_check(q: int, element_order: int | None = None) -> bool:
    """Do all elements of the given order (default q) in a Borel of PSL(2,q) commute?"""
    if not is_prime(q):
        raise ValueError("q must be prime")
    built = build(f"PSL(2,{q})")
    B = point_stabilizer(built.group, 0)
    if B.order() != q * (q - 1) // math.gcd(2, q - 1):
        raise AssertionError("Borel subgroup has the wrong order")  # pragma: no cover
    r = element_order or q
    elems = [b for b in B.elements() if perm_order(b) == r]
    return all(mul(a, b) == mul(b, a) for a, b in itertools.combinations(elems, 2))


__all__ = [
    "WitnessQuery", "WitnessReport", "pair_witness", "tuple_witness", "table1_match",
    "theorem_a_survey", "ClassVerdict", "alt_witness", "alt_commutator", "wreath_lemma_check",
    "normalize_to_y", "borel_commute_check", "generating_pair", "WreathElement", "power",
]
