"""Permutations as image tuples.

A permutation of degree n is a tuple ``p`` with ``p[i]`` the image of point i
(0-based). Products are read left to right: ``mul(a, b)`` applies ``a`` first,
so ``i^(ab) = (i^a)^b`` and conjugation is ``x^g = g^-1 x g``.

Cycle notation in reports is 1-based and comma separated: ``"(1,2,3)(4,5)"``.
"""

from __future__ import annotations

import math
import re
import sys
from array import array
from typing import Iterable, Sequence

Perm = tuple

__all__ = [
    "Perm", "identity", "mul", "mul_many", "inv", "conj", "commutator", "power",
    "is_identity", "perm_order", "cycles", "cycle_type", "from_cycles",
    "parse_cycles", "format_cycles", "moved_points", "encode", "is_even",
    "check_perm",
]


def identity(n: int) -> Perm:
    return tuple(range(n))


def check_perm(p: Sequence[int]) -> None:
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"not a permutation: {p!r}")


def mul(a: Perm, b: Perm) -> Perm:
    """Apply ``a`` then ``b``."""
    return tuple(map(b.__getitem__, a))


def mul_many(*ps: Perm) -> Perm:
    out = ps[0]
    for p in ps[1:]:
        out = tuple(map(p.__getitem__, out))
    return out


def inv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def conj(x: Perm, g: Perm) -> Perm:
    """``g^-1 x g``: relabel the cycles of x by g."""
    out = [0] * len(x)
    for i, j in enumerate(x):
        out[g[i]] = g[j]
    return tuple(out)


def commutator(a: Perm, b: Perm) -> Perm:
    """``[a, b] = a^-1 b^-1 a b``."""
    return mul_many(inv(a), inv(b), a, b)


def power(a: Perm, k: int) -> Perm:
    n = len(a)
    if k < 0:
        a, k = inv(a), -k
    result = identity(n)
    base = a
    while k:
        if k & 1:
            result = mul(result, base)
        base = mul(base, base)
        k >>= 1
    return result


def is_identity(a: Perm) -> bool:
    return all(i == j for i, j in enumerate(a))


def cycles(a: Perm, include_fixed: bool = False) -> list[tuple[int, ...]]:
    seen = [False] * len(a)
    out = []
    for i in range(len(a)):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = True
        j = a[i]
        while j != i:
            seen[j] = True
            cyc.append(j)
            j = a[j]
        if len(cyc) > 1 or include_fixed:
            out.append(tuple(cyc))
    return out


def cycle_type(a: Perm) -> tuple[int, ...]:
    """Sorted (descending) lengths of the non-trivial cycles."""
    return tuple(sorted((len(c) for c in cycles(a)), reverse=True))


def perm_order(a: Perm) -> int:
    return math.lcm(1, *(len(c) for c in cycles(a)))


def is_even(a: Perm) -> bool:
    return sum(len(c) - 1 for c in cycles(a)) % 2 == 0


def moved_points(a: Perm) -> list[int]:
    return [i for i, j in enumerate(a) if i != j]


def from_cycles(n: int, cycs: Iterable[Sequence[int]]) -> Perm:
    """Build a degree-n permutation from 0-based cycles (composed left to right)."""
    out = identity(n)
    for cyc in cycs:
        img = list(range(n))
        for k, pt in enumerate(cyc):
            img[pt] = cyc[(k + 1) % len(cyc)]
        if len(set(cyc)) != len(cyc):
            raise ValueError(f"repeated point in cycle {cyc!r}")
        out = mul(out, tuple(img))
    return out


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(s: str, n: int | None = None, one_based: bool = True) -> Perm:
    """Parse ``"(1,2,3)(4,5)"`` (1-based by default); ``"()"`` is the identity."""
    text = s.strip()
    if _CYCLE_RE.sub("", text).strip():
        raise ValueError(f"could not parse permutation {s!r}")
    shift = 1 if one_based else 0
    cycs = []
    for body in _CYCLE_RE.findall(text):
        toks = [t for t in re.split(r"[,\s]+", body) if t]
        if toks:
            cycs.append([int(t) - shift for t in toks])
    top = max((max(c) for c in cycs), default=-1) + 1
    if n is None:
        n = top
    if top > n or any(min(c) < 0 for c in cycs):
        raise ValueError(f"point out of range in {s!r} for degree {n}")
    return from_cycles(n, cycs)


def format_cycles(a: Perm) -> str:
    cs = cycles(a)
    if not cs:
        return "()"
    return "".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in cs)


def encode(a: Perm) -> bytes:
    """Canonical byte encoding: little-endian uint16 image array."""
    buf = array("H", a)
    if sys.byteorder != "little":  # pragma: no cover
        buf.byteswap()
    return buf.tobytes()
