"""Wreath products L wr S_t in imprimitive action, and formal wreath elements.

A wreath element ``(s_1, ..., s_t) tau`` multiplies by

    (s) tau * (r) pi = (s_i r_{tau^-1(i)})_i (tau o pi)

where ``tau`` is stored as a function on block indices (``tau[i] = tau(i)``)
and the block components multiply with the permutation product of L. Under
this rule ``tau (r) tau^-1 = (r_{tau^-1(i)})_i``, so with ``tau = (1 2 ... t)``
one gets ``tau (u) tau^-1 = (u_t, u_1, ..., u_{t-1})``.

The encoding into permutations of ``t * d`` points sends point ``(i, a)``
(block i, point a of L) to ``(tau^-1(i), a^{s_i})``; it is a homomorphism into
left-to-right permutation products.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .group import PermutationGroup
from .perm import Perm, identity, inv, mul


def _compose(tau: Perm, pi: Perm) -> Perm:
    """Function composition tau o pi (apply pi first)."""
    return tuple(tau[j] for j in pi)


@dataclass(frozen=True)
class WreathElement:
    components: tuple  # (s_1, ..., s_t), each a permutation of L's points
    tau: Perm  # function on block indices 0..t-1

    @property
    def t(self) -> int:
        return len(self.tau)

    @classmethod
    def base(cls, components: Sequence[Perm]) -> "WreathElement":
        return cls(tuple(tuple(c) for c in components), identity(len(components)))

    @classmethod
    def top(cls, tau: Perm, d: int) -> "WreathElement":
        return cls(tuple(identity(d) for _ in tau), tuple(tau))

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        tinv = inv(self.tau)
        comps = tuple(mul(self.components[i], other.components[tinv[i]]) for i in range(self.t))
        return WreathElement(comps, _compose(self.tau, other.tau))

    def inverse(self) -> "WreathElement":
        # (s) tau * (r) tau^-1 = 1  =>  r_{tau^-1(i)} = s_i^-1  =>  r_j = s_{tau(j)}^-1
        tinv = inv(self.tau)
        comps = tuple(inv(self.components[self.tau[j]]) for j in range(self.t))
        return WreathElement(comps, tinv)

    def __pow__(self, k: int) -> "WreathElement":
        d = len(self.components[0])
        out = WreathElement.top(identity(self.t), d)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            out = out * base
        return out

    def conj_by(self, g: "WreathElement") -> "WreathElement":
        """g x g^-1, the conjugation used in the reduction computations."""
        return g * self * g.inverse()

    def is_base(self) -> bool:
        return self.tau == identity(self.t)


def cycle_tau(t: int) -> Perm:
    """tau = (1 2 ... t) as a function: i -> i + 1 mod t."""
    return tuple((i + 1) % t for i in range(t))


class WreathProduct:
    """L wr S_t acting on t blocks of L's points."""

    def __init__(self, L: PermutationGroup, t: int):
        if t < 1:
            raise ValueError("top degree must be positive")
        if t * L.degree > 4000:
            raise ValueError("wreath degree exceeds 4000 points")
        self.L = L
        self.t = t
        self.d = L.degree
        gens = []
        L._ensure()
        for s in L.gens:
            comps = [identity(self.d)] * t
            comps[0] = s
            gens.append(self.encode(comps, identity(t)))
        if t >= 2:
            gens.append(self.encode([identity(self.d)] * t, cycle_tau(t)))
            gens.append(self.encode([identity(self.d)] * t, (1, 0) + tuple(range(2, t))))
        self.group = PermutationGroup(gens, degree=t * self.d)

    def encode(self, components: Sequence[Perm], tau: Perm) -> Perm:
        d, t = self.d, self.t
        if len(components) != t or len(tau) != t:
            raise ValueError("need one component per block")
        tinv = inv(tuple(tau))
        img = [0] * (t * d)
        for i in range(t):
            s = components[i]
            off = tinv[i] * d
            for a in range(d):
                img[i * d + a] = off + s[a]
        return tuple(img)

    def encode_element(self, w: WreathElement) -> Perm:
        return self.encode(w.components, w.tau)

    def decode(self, p: Perm) -> tuple[tuple, Perm]:
        d, t = self.d, self.t
        if len(p) != t * d:
            raise ValueError("degree mismatch")
        block_map = []
        comps = []
        for i in range(t):
            tgt = p[i * d] // d
            block_map.append(tgt)
            s = []
            for a in range(d):
                q = p[i * d + a]
                if q // d != tgt:
                    raise ValueError("permutation does not preserve the block system")
                s.append(q - tgt * d)
            comps.append(tuple(s))
        tau = inv(tuple(block_map))
        return tuple(comps), tau

    def decode_element(self, p: Perm) -> WreathElement:
        comps, tau = self.decode(p)
        return WreathElement(comps, tau)

    def order_formula(self) -> int:
        return self.L.order() ** self.t * math.factorial(self.t)


def block_projection(wp: WreathProduct, elems: Sequence[Perm], block: int = 0) -> PermutationGroup:
    """Group generated by the ``block`` components of base-group elements."""
    comps = []
    for e in elems:
        c, tau = wp.decode(e)
        if tau != identity(wp.t):
            raise ValueError("projection defined for base-group elements only")
        comps.append(c[block])
    return PermutationGroup(comps, degree=wp.d)


__all__ = ["WreathElement", "WreathProduct", "cycle_tau", "block_projection"]
