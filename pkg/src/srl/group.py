"""Permutation groups backed by a deterministic Schreier-Sims stabilizer chain.

The chain is built incrementally: every generator is sifted, residues become
strong generators, and Schreier generators are checked level by level with a
work queue so each (orbit point, strong generator) pair is examined once.
Base points are always the smallest point moved by the residue that forced a
new level, which makes chains (and therefore random elements for a given
seed) reproducible.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import deque
from typing import Iterable, Iterator, Sequence

from .perm import Perm, commutator, conj, identity, inv, mul

DEGREE_CAP = 4000


class _Level:
    __slots__ = ("point", "gens", "orbit", "trans", "tinv", "queue")

    def __init__(self, point: int, ident: Perm):
        self.point = point
        self.gens: list[Perm] = []
        self.orbit: list[int] = [point]
        self.trans: dict[int, Perm] = {point: ident}
        self.tinv: dict[int, Perm] = {point: ident}
        self.queue: deque = deque()

    def add_gen(self, s: Perm) -> None:
        self.gens.append(s)
        for beta in self.orbit:
            self.queue.append((beta, s))


class PermutationGroup:
    """A permutation group given by generators, with a lazily built chain.

    The group is mutable only while generators are being added; the chain
    is extended in place, so a group handed to several readers must not be
    extended afterwards.
    """

    def __init__(self, gens: Iterable[Sequence[int]] = (), degree: int | None = None):
        gens = [tuple(g) for g in gens]
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group without generators")
            degree = len(gens[0])
        if degree > DEGREE_CAP:
            raise ValueError(f"degree {degree} exceeds cap {DEGREE_CAP}")
        for g in gens:
            if len(g) != degree:
                raise ValueError("generators of differing degree")
        self.degree = degree
        self.identity = identity(degree)
        self.gens: list[Perm] = []
        self._levels: list[_Level] = []
        self._built = False
        self._pending = gens

    # -- chain construction -------------------------------------------------

    def _ensure(self) -> None:
        if self._built:
            return
        self._built = True
        pending, self._pending = self._pending, []
        for g in pending:
            self.add_generator(g)

    def add_generator(self, g: Perm) -> bool:
        """Extend the group by ``g``; returns False when ``g`` was already a member."""
        self._ensure()
        h, j = self._sift(g, 0)
        if h == self.identity:
            return False
        self.gens.append(g)
        self._add_residue(h, 0, j)
        self._complete(j)
        return True

    def _add_residue(self, h: Perm, lo: int, j: int) -> None:
        if j == len(self._levels):
            point = next(i for i, v in enumerate(h) if i != v)
            self._levels.append(_Level(point, self.identity))
        for lvl in range(lo, j + 1):
            self._levels[lvl].add_gen(h)

    def _complete(self, top: int) -> None:
        levels = self._levels
        i = top
        while i >= 0:
            lv = levels[i]
            if not lv.queue:
                i -= 1
                continue
            beta, s = lv.queue.popleft()
            gamma = s[beta]
            ub = lv.trans[beta]
            if gamma not in lv.trans:
                u = mul(ub, s)
                lv.trans[gamma] = u
                lv.tinv[gamma] = inv(u)
                lv.orbit.append(gamma)
                for t in lv.gens:
                    lv.queue.append((gamma, t))
                continue
            sg = mul(mul(ub, s), lv.tinv[gamma])
            if sg == self.identity:
                continue
            h, j = self._sift(sg, i + 1)
            if h != self.identity:
                self._add_residue(h, i + 1, j)
                i = j

    def _sift(self, g: Perm, start: int) -> tuple[Perm, int]:
        levels = self._levels
        for i in range(start, len(levels)):
            lv = levels[i]
            ui = lv.tinv.get(g[lv.point])
            if ui is None:
                return g, i
            g = tuple(map(ui.__getitem__, g))
        return g, len(levels)

    # -- queries -------------------------------------------------------------

    @property
    def base(self) -> list[int]:
        self._ensure()
        return [lv.point for lv in self._levels]

    @property
    def strong_generators(self) -> list[Perm]:
        self._ensure()
        seen: dict[Perm, None] = {}
        for lv in self._levels:
            for s in lv.gens:
                seen.setdefault(s, None)
        return list(seen)

    def basic_orbits(self) -> list[list[int]]:
        self._ensure()
        return [list(lv.orbit) for lv in self._levels]

    def transversal(self, level: int) -> dict[int, Perm]:
        self._ensure()
        return dict(self._levels[level].trans)

    def order(self) -> int:
        self._ensure()
        return math.prod(len(lv.orbit) for lv in self._levels)

    def is_trivial(self) -> bool:
        return self.order() == 1

    def contains(self, g: Sequence[int]) -> bool:
        g = tuple(g)
        if len(g) != self.degree:
            return False
        self._ensure()
        h, _ = self._sift(g, 0)
        return h == self.identity

    __contains__ = contains

    def random_element(self, rng: random.Random) -> Perm:
        """Uniform element: a product of uniformly chosen coset representatives."""
        self._ensure()
        g = self.identity
        for lv in reversed(self._levels):
            beta = lv.orbit[rng.randrange(len(lv.orbit))]
            g = mul(g, lv.trans[beta])
        return g

    def elements(self) -> Iterator[Perm]:
        self._ensure()
        levels = [[lv.trans[b] for b in lv.orbit] for lv in reversed(self._levels)]
        if not levels:
            yield self.identity
            return
        for combo in itertools.product(*levels):
            g = combo[0]
            for u in combo[1:]:
                g = tuple(map(u.__getitem__, g))
            yield g

    def orbit(self, point: int) -> list[int]:
        self._ensure()
        seen = {point}
        out = [point]
        for p in out:
            for g in self.gens:
                q = g[p]
                if q not in seen:
                    seen.add(q)
                    out.append(q)
        return out

    def is_subgroup_of(self, other: "PermutationGroup") -> bool:
        self._ensure()
        return all(other.contains(g) for g in self.gens)

    def __repr__(self) -> str:
        return f"PermutationGroup(degree={self.degree}, ngens={len(self._pending) + len(self.gens)})"


def subgroup(gens: Iterable[Perm], degree: int) -> PermutationGroup:
    return PermutationGroup(list(gens), degree=degree)


def closure_by_enumeration(gens: Sequence[Perm], degree: int, cap: int = 10**6) -> set[Perm]:
    """All elements of <gens> by breadth-first multiplication (independent oracle)."""
    e = identity(degree)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = mul(g, s)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    if len(seen) > cap:
                        raise ValueError("closure exceeds cap")
        frontier = nxt
    return seen


def normal_closure(G: PermutationGroup, seeds: Iterable[Perm]) -> PermutationGroup:
    """Smallest normal subgroup of G containing ``seeds``."""
    N = PermutationGroup([], degree=G.degree)
    queue = []
    for s in seeds:
        if N.add_generator(tuple(s)):
            queue.append(tuple(s))
    G._ensure()
    for n in queue:
        for g in G.gens:
            c = conj(n, g)
            if N.add_generator(c):
                queue.append(c)
    return N


def is_normal(G: PermutationGroup, N: PermutationGroup) -> bool:
    N._ensure()
    G._ensure()
    return all(N.contains(conj(n, g)) for n in N.gens for g in G.gens)


def derived_subgroup(G: PermutationGroup) -> PermutationGroup:
    G._ensure()
    gens = G.gens
    seeds = [commutator(a, b) for a, b in itertools.combinations(gens, 2)]
    return normal_closure(G, seeds)


def commutator_subgroup(G: PermutationGroup, N: PermutationGroup) -> PermutationGroup:
    """[N, G] for N normal in G."""
    G._ensure()
    N._ensure()
    seeds = [commutator(n, g) for n in N.gens for g in G.gens]
    return normal_closure(G, seeds)


def derived_series(G: PermutationGroup) -> list[PermutationGroup]:
    """G = D0 > D1 > ... ending at the trivial group or at a perfect term."""
    series = [G]
    while not series[-1].is_trivial():
        D = derived_subgroup(series[-1])
        if D.order() == series[-1].order():
            break
        series.append(D)
    return series


def lower_central_series(G: PermutationGroup) -> list[PermutationGroup]:
    series = [G]
    while not series[-1].is_trivial():
        L = commutator_subgroup(G, series[-1])
        if L.order() == series[-1].order():
            break
        series.append(L)
    return series


def is_solvable(G: PermutationGroup) -> bool:
    return derived_series(G)[-1].is_trivial()


def is_nilpotent(G: PermutationGroup) -> bool:
    return lower_central_series(G)[-1].is_trivial()


def is_abelian(G: PermutationGroup) -> bool:
    G._ensure()
    return all(mul(a, b) == mul(b, a) for a, b in itertools.combinations(G.gens, 2))
