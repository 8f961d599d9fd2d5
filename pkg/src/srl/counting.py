"""Counting criteria for generating pairs, in exact rational arithmetic.

The criterion: if ``|x^G|^2 > sum_i |x^G cap X_i|^2 [G:X_i]`` over
representatives ``X_i`` of the maximal subgroups containing ``x``, some
conjugate pairs with ``x`` to generate G. The weaker sufficient form
compares ``|G| / |C_G(x)|^2`` with ``sum_i |x^G cap X_i|``.

Nothing here uses floating point.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .conjugacy import ConjugacyClass, class_intersection, conjugacy_class, subgroup_conjugates
from .errors import Infeasible, InvalidFamilyParams
from .field import is_prime, prime_power
from .group import PermutationGroup
from .perm import Perm, inv, mul, perm_order

EXHAUSTIVE_CAP = 10**6


# -- counting instances ---------------------------------------------------------------------


@dataclass(frozen=True)
class SubgroupTerm:
    label: str
    intersection: int  # |x^G cap X_i|
    index: int  # [G : X_i]


@dataclass
class CountingInstance:
    group_order: int
    class_size: int
    subgroups: list = dc_field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        self.subgroups = [s if isinstance(s, SubgroupTerm) else SubgroupTerm(**s) for s in self.subgroups]
        if self.group_order < 1 or self.class_size < 1:
            raise ValueError("orders must be positive")
        if self.group_order % self.class_size:
            raise ValueError("class size must divide the group order")
        for s in self.subgroups:
            if s.index < 1 or self.group_order % s.index:
                raise ValueError(f"{s.label}: index {s.index} does not divide |G|")
            if not 0 <= s.intersection <= min(self.class_size, self.group_order // s.index):
                raise ValueError(f"{s.label}: intersection {s.intersection} out of range")

    @property
    def centralizer_order(self) -> int:
        return self.group_order // self.class_size

    def fixed_counts(self) -> list[Fraction]:
        """n_i = |x^G cap X_i| [G:X_i] / |x^G|: conjugates of X_i containing x."""
        return [Fraction(s.intersection * s.index, self.class_size) for s in self.subgroups]

    @classmethod
    def from_dict(cls, d: dict) -> "CountingInstance":
        return cls(int(d["group_order"]), int(d["class_size"]),
                   [SubgroupTerm(str(s["label"]), int(s["intersection"]), int(s["index"]))
                    for s in d.get("subgroups", [])], d.get("name", ""))

    @classmethod
    def load(cls, path: str | Path) -> "CountingInstance":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def to_dict(self) -> dict:
        return {"name": self.name, "group_order": self.group_order, "class_size": self.class_size,
                "subgroups": [{"label": s.label, "intersection": s.intersection, "index": s.index}
                              for s in self.subgroups]}


@dataclass
class CountingVerdict:
    form: str
    lhs: Fraction
    rhs: Fraction
    holds: bool

    @property
    def margin(self) -> Fraction:
        return self.lhs - self.rhs

    def to_json(self) -> dict:
        return {"record": "counting", "form": self.form, "lhs": str(self.lhs), "rhs": str(self.rhs),
                "margin": str(self.margin), "criterion_holds": self.holds}


def counting_check(inst: CountingInstance, form: str = "full") -> CountingVerdict:
    if form == "full":
        lhs = Fraction(inst.class_size**2)
        rhs = Fraction(sum(s.intersection**2 * s.index for s in inst.subgroups))
    elif form == "remark":
        lhs = Fraction(inst.group_order, inst.centralizer_order**2)
        rhs = Fraction(sum(s.intersection for s in inst.subgroups))
    else:
        raise ValueError(f"unknown form {form!r}")
    return CountingVerdict(form, lhs, rhs, lhs > rhs)


# -- union bound ------------------------------------------------------------------------------


@dataclass
class UnionBound:
    union: int  # |x^G cap union of the conjugates X_ij that contain x|
    bound: int  # sum_i n_i |x^G cap X_i|
    n: list  # n_i per subgroup
    union_all: int  # same union over every conjugate of every X_i
    sum_all: int  # sum of |x^G cap X_ij| over every conjugate

    @property
    def holds(self) -> bool:
        return self.union <= self.bound and self.union_all <= self.sum_all

    def to_json(self) -> dict:
        return {"record": "union_bound", "union": self.union, "bound": self.bound, "n": self.n,
                "union_all_conjugates": self.union_all, "sum_all_conjugates": self.sum_all,
                "holds": self.holds}


def union_bound_check(G: PermutationGroup, cls: ConjugacyClass, subgroups: Sequence[PermutationGroup],
                      cap: int = 200) -> UnionBound:
    """Measure the union of class members covered by conjugates of the X_i exactly."""
    x = cls.representative
    covered: set = set()
    covered_all: set = set()
    bound = 0
    sum_all = 0
    ns = []
    for X in subgroups:
        conjugates = subgroup_conjugates(G, X, cap)
        inter = class_intersection(cls, X)
        containing = [Y for Y in conjugates if Y.contains(x)]
        ns.append(len(containing))
        bound += len(containing) * inter
        sum_all += len(conjugates) * inter
        for Y in conjugates:
            hit = {y for y in cls.members if Y.contains(y)}
            covered_all |= hit
            if Y.contains(x):
                covered |= hit
    return UnionBound(len(covered), bound, ns, len(covered_all), sum_all)


# -- commutator counts ---------------------------------------------------------------------------


def commutator_order_counts(G: PermutationGroup, x: Perm) -> dict[int, int]:
    """order d -> #{g in G : [x, g] has order d}, by sweeping every g."""
    order = G.order()
    if order > EXHAUSTIVE_CAP:
        raise Infeasible(f"|G| = {order} exceeds the exhaustive cap")
    xi = inv(x)
    counts: dict[int, int] = {}
    for g in G.elements():
        c = mul(mul(mul(xi, inv(g)), x), g)
        d = perm_order(c)
        counts[d] = counts.get(d, 0) + 1
    return counts


def commutator_order_counts_by_class(G: PermutationGroup, x: Perm,
                                     cls: ConjugacyClass | None = None) -> dict[int, int]:
    """Same counts via [x, g] = x^-1 x^g: each class member y arises from |C(x)| elements g."""
    cls = cls or conjugacy_class(G, x)
    xi = inv(x)
    counts: dict[int, int] = {}
    for y in cls.members:
        d = perm_order(mul(xi, y))
        counts[d] = counts.get(d, 0) + cls.centralizer_order
    return counts


def commutator_class_count(G: PermutationGroup, x: Perm, target_order: int) -> int:
    """#{g in G : order([x, g]) = target_order}, cross-checked by two independent counts."""
    by_class = commutator_order_counts_by_class(G, x)
    if G.order() <= EXHAUSTIVE_CAP:
        sweep = commutator_order_counts(G, x)
        if sweep != by_class:
            raise AssertionError("commutator counts disagree between the two routes")  # pragma: no cover
    return by_class.get(target_order, 0)


# -- field automorphism audits ----------------------------------------------------------------------


@dataclass
class FieldAutoAudit:
    family: str
    q0: int
    p: int
    class_size: Fraction  # |x^{G0}| (PSL2) or |G0|/|C(x)|^2 (SzB2, ReeG2)
    terms: list  # (label, Fraction)
    lhs_label: str = "|x^G0|"

    @property
    def q(self) -> int:
        return self.q0**self.p

    @property
    def bound(self) -> Fraction:
        return sum((t for _, t in self.terms), Fraction(0))

    @property
    def holds(self) -> bool:
        return self.class_size > self.bound

    def to_json(self) -> dict:
        return {"record": "audit", "family": self.family, "q0": self.q0, "p": self.p, "q": self.q,
                "lhs_label": self.lhs_label, "lhs": str(self.class_size),
                "terms": [{"label": lbl, "value": str(v)} for lbl, v in self.terms],
                "bound": str(self.bound), "holds": self.holds}


def _exact_sqrt(n: int) -> int:
    r = math.isqrt(n)
    if r * r != n:
        raise InvalidFamilyParams(f"{n} is not a perfect square")
    return r


def _odd_power_of(q0: int, base: int) -> bool:
    pk = prime_power(q0)
    return pk is not None and pk[0] == base and pk[1] % 2 == 1


def field_auto_bound_audit(family: str, q0: int, p: int) -> FieldAutoAudit:
    """Evaluate the class-size versus Gamma-bound comparison for a field automorphism of order p."""
    if not is_prime(p) or p == 2:
        raise InvalidFamilyParams(f"p = {p} must be an odd prime")
    F = Fraction
    if family == "PSL2":
        if prime_power(q0) is None:
            raise InvalidFamilyParams(f"q0 = {q0} is not a prime power")
        q = q0**p
        size = F(q * (q0 ** (2 * p) - 1), q0 * (q0**2 - 1))
        terms = [
            ("centralizer", F(q0 * (q0**2 - 1))),
            ("Borel", F(q * (q - 1) * (q0 + 1), q0 * (q0 - 1))),
            ("non-split torus", F((q + 1) * q0 * (q0 - 1), q0 + 1)),
        ]
        return FieldAutoAudit(family, q0, p, size, terms)
    if family == "SzB2":
        if not _odd_power_of(q0, 2):
            raise InvalidFamilyParams(f"q0 = {q0} must be an odd power of 2")
        q = q0**p
        r, r0 = _exact_sqrt(2 * q), _exact_sqrt(2 * q0)
        lhs = F(q * q * (q * q + 1) * (q - 1), q0**4 * (q0**2 + 1) ** 2 * (q0 - 1) ** 2)
        terms = [
            ("one", F(1)),
            ("Borel", F(q * q * (q - 1), q0**4 * (q0 - 1) ** 2)),
            ("dihedral", F(2 * (q - 1), (q0 - 1) ** 2)),
            ("N(A1)", F(4 * (q + r + 1), (q0 + r0 + 1) ** 2)),
            ("N(A2)", F(4 * (q - r + 1), (q0 - r0 + 1) ** 2)),
        ]
        return FieldAutoAudit(family, q0, p, lhs, terms, "|G0|/|C(x)|^2")
    if family == "ReeG2":
        if not _odd_power_of(q0, 3):
            raise InvalidFamilyParams(f"q0 = {q0} must be an odd power of 3")
        q = q0**p
        r, r0 = _exact_sqrt(3 * q), _exact_sqrt(3 * q0)
        lhs = F(q**3 * (q**3 + 1) * (q - 1), q0**6 * (q0**3 + 1) ** 2 * (q0 - 1) ** 2)
        terms = [
            ("one", F(1)),
            ("Borel", F(q**3 * (q - 1), q0**6 * (q0 - 1) ** 2)),
            ("2 x L(2,q)-type", F(6 * (q + 1), (q0 + 1) ** 2)),
            ("Z(q+sqrt(3q)+1):6", F(6 * (q + r + 1), (q0 + r0 + 1) ** 2)),
            ("Z(q-sqrt(3q)+1):6", F(6 * (q - r + 1), (q0 - r0 + 1) ** 2)),
            ("L(2,q) centralizer", F(2 * q * (q * q - 1), q0**2 * (q0**2 - 1) ** 2)),
        ]
        return FieldAutoAudit(family, q0, p, lhs, terms, "|G0|/|C(x)|^2")
    raise InvalidFamilyParams(f"unknown family {family!r}")


__all__ = [
    "SubgroupTerm", "CountingInstance", "CountingVerdict", "counting_check", "UnionBound",
    "union_bound_check", "commutator_order_counts", "commutator_order_counts_by_class",
    "commutator_class_count", "FieldAutoAudit", "field_auto_bound_audit",
]
