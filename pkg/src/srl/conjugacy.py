"""Conjugacy classes by orbit enumeration, and the solvable radical.

A class is the orbit of its representative under conjugation by the group's
generators. Every member remembers the member it was reached from and the
generator used, so a conjugator can be rebuilt for any member. Centralizer
orders come from orbit-stabilizer and are never searched for directly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable

from .errors import ClassTooLarge, RadicalInfeasible, SubgroupOrbitTooLarge
from .group import PermutationGroup, is_normal, is_solvable, normal_closure
from .perm import Perm, conj, format_cycles, identity, inv, mul, perm_order, power

CLASS_CAP = 10**5
ENUMERATION_CAP = 10**6


@dataclass
class ConjugacyClass:
    representative: Perm
    size: int
    centralizer_order: int
    element_order: int
    # member -> (previous member, generator index); the representative maps to None
    members: dict = dc_field(default_factory=dict, repr=False)
    gens: list = dc_field(default_factory=list, repr=False)

    def __contains__(self, y: Perm) -> bool:
        return tuple(y) in self.members

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return self.size

    def conjugator(self, y: Perm) -> Perm:
        """g with representative^g == y."""
        y = tuple(y)
        if y not in self.members:
            raise KeyError("not a member of this class")
        path = []
        while self.members[y] is not None:
            prev, gi = self.members[y]
            path.append(self.gens[gi])
            y = prev
        g = identity(len(self.representative))
        for s in reversed(path):
            g = mul(g, s)
        return g

    def to_json(self) -> dict:
        return {
            "rep_cycles": format_cycles(self.representative),
            "size": self.size,
            "centralizer_order": self.centralizer_order,
            "element_order": self.element_order,
        }


def conjugacy_class(G: PermutationGroup, x: Perm, cap: int = CLASS_CAP) -> ConjugacyClass:
    """Breadth-first conjugation orbit of ``x``."""
    x = tuple(x)
    if not G.contains(x):
        raise ValueError("element is not in the group")
    gens = list(G.gens)
    members: dict = {x: None}
    frontier = [x]
    while frontier:
        nxt = []
        for y in frontier:
            for gi, s in enumerate(gens):
                z = conj(y, s)
                if z not in members:
                    members[z] = (y, gi)
                    nxt.append(z)
                    if len(members) > cap:
                        raise ClassTooLarge(f"class exceeds {cap} members")
        frontier = nxt
    size = len(members)
    order = G.order()
    return ConjugacyClass(x, size, order // size, perm_order(x), members, gens)


def class_intersection(cls: ConjugacyClass, X: PermutationGroup) -> int:
    """Number of class members lying in X."""
    return sum(1 for y in cls.members if X.contains(y))


def fixed_conjugate_count(cls: ConjugacyClass, X: PermutationGroup, index: int,
                          intersection: int | None = None) -> tuple[Fraction, bool]:
    """|x^G cap X| * [G:X] / |x^G|, with a flag saying whether it is an integer."""
    if intersection is None:
        intersection = class_intersection(cls, X)
    n = Fraction(intersection * index, cls.size)
    return n, n.denominator == 1


def class_survey(G: PermutationGroup, seed: int = 0, cap: int = CLASS_CAP,
                 sample_budget: int | None = None) -> list[ConjugacyClass]:
    """All conjugacy classes of G, each rooted at its least member.

    Classes are found by seeded random sampling plus powers of the
    representatives found so far; completeness is checked by summing class
    sizes to |G|. If sampling stalls, every element is enumerated instead.
    """
    order = G.order()
    rng = random.Random(seed)
    found: list[ConjugacyClass] = []
    total = 0
    budget = sample_budget if sample_budget is not None else 50 + 4 * min(order, 500)

    def locate(y: Perm) -> bool:
        return any(y in c for c in found)

    def add(y: Perm) -> None:
        nonlocal total
        if locate(y):
            return
        c = conjugacy_class(G, y, cap)
        c = conjugacy_class(G, min(c.members), cap)
        found.append(c)
        total += c.size
        for k in range(2, c.element_order):
            add(power(c.representative, k))

    add(G.identity)
    for _ in range(budget):
        if total == order:
            break
        add(G.random_element(rng))
    if total != order:
        if order > ENUMERATION_CAP:
            raise RadicalInfeasible(f"class survey incomplete and |G| = {order} is too large to enumerate")
        for y in G.elements():
            if total == order:
                break
            add(y)
    if total != order:
        raise AssertionError("class sizes do not sum to the group order")  # pragma: no cover
    found.sort(key=lambda c: (c.element_order, c.size, c.representative))
    return found


@dataclass
class RadicalResult:
    group: PermutationGroup
    order: int
    generators: list
    solvable_reps: list  # representatives of classes with solvable normal closure

    def contains(self, x: Perm) -> bool:
        return self.group.contains(x)

    def to_json(self) -> dict:
        return {"order": self.order, "generators": [format_cycles(g) for g in self.generators],
                "solvable_class_reps": [format_cycles(r) for r in self.solvable_reps]}


def solvable_radical(G: PermutationGroup, classes: Iterable[ConjugacyClass] | None = None,
                     seed: int = 0) -> RadicalResult:
    """O_inf(G) as the normal closure of all x whose own normal closure is solvable."""
    if is_solvable(G):
        G._ensure()
        return RadicalResult(G, G.order(), list(G.gens), [])
    if classes is None:
        try:
            classes = class_survey(G, seed)
        except ClassTooLarge as exc:
            raise RadicalInfeasible(str(exc)) from exc
    reps = []
    for c in classes:
        if c.element_order == 1:
            continue
        if is_solvable(normal_closure(G, [c.representative])):
            reps.append(c.representative)
    R = normal_closure(G, reps)
    if not is_normal(G, R) or not is_solvable(R):
        raise AssertionError("radical failed its normality/solvability check")  # pragma: no cover
    return RadicalResult(R, R.order(), list(R.gens), reps)


def subgroup_key(X: PermutationGroup) -> frozenset:
    return frozenset(X.elements())


def subgroup_conjugates(G: PermutationGroup, X: PermutationGroup, cap: int = 200) -> list[PermutationGroup]:
    """All distinct conjugates X^g, by breadth-first conjugation of generators."""
    X._ensure()
    G._ensure()
    seen = {subgroup_key(X): X}
    frontier = [X]
    while frontier:
        nxt = []
        for Y in frontier:
            for s in G.gens:
                Z = PermutationGroup([conj(h, s) for h in Y.gens], degree=G.degree)
                key = subgroup_key(Z)
                if key not in seen:
                    seen[key] = Z
                    nxt.append(Z)
                    if len(seen) > cap:
                        raise SubgroupOrbitTooLarge(f"more than {cap} conjugates")
        frontier = nxt
    return list(seen.values())


def normalizer_order(G: PermutationGroup, X: PermutationGroup, cap: int = 200) -> int:
    return G.order() // len(subgroup_conjugates(G, X, cap))


def point_stabilizer(G: PermutationGroup, point: int) -> PermutationGroup:
    """Stabilizer of ``point`` via Schreier generators of its orbit."""
    G._ensure()
    trans = {point: G.identity}
    queue = [point]
    for b in queue:
        for s in G.gens:
            c = s[b]
            if c not in trans:
                trans[c] = mul(trans[b], s)
                queue.append(c)
    S = PermutationGroup([], degree=G.degree)
    for b, u in trans.items():
        for s in G.gens:
            h = mul(mul(u, s), inv(trans[s[b]]))
            S.add_generator(h)
    return S
