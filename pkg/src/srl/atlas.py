"""Named groups as permutation groups: symmetric/alternating/cyclic, classical
groups over small fields, wreath and direct products.

Matrix groups act on row vectors (``v -> v A``), so matrix products map to
left-to-right permutation products. Linear families act faithfully on the
nonzero vectors whose form value matches that of some basis vector (all
nonzero vectors when there is no form); projective families act on
projective points.

Generators for classical groups are picked deterministically from a list of
torus elements and root elements (transvections, unitary transvections,
Siegel elements). Each candidate is checked against the defining form and
determinant, and candidates are added until the stabilizer-chain order
equals the closed-form group order.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

from .errors import (ActionTooLarge, GeneratorValidationFailed, IsotropicAxis,
                     NotIsotropicPair, ParseError, PreconditionViolated,
                     UnsupportedSpec)
from .field import GF, FieldElement, PrimePowerField, prime_power
from .group import DEGREE_CAP, PermutationGroup
from .matrix import (ClassicalForm, Matrix, form_preserved, hermitian_form,
                     quadratic_form, symplectic_form)
from .perm import Perm, cycles, identity, perm_order
from .wreath import WreathProduct

LINEAR = ("SL", "GL", "Sp", "SU", "GU", "OmegaPlus", "OmegaMinus")
PROJECTIVE = {"PSL": "SL", "PGL": "GL", "PSp": "Sp", "PSU": "SU", "PGU": "GU"}
MATRIX_FAMILIES = LINEAR + tuple(PROJECTIVE)
FAMILIES = ("Alt", "Sym", "Cyclic") + MATRIX_FAMILIES + ("Wreath", "Direct")
_CANON = {f.lower(): f for f in FAMILIES}
_CANON.update({"omega+": "OmegaPlus", "omega-": "OmegaMinus", "a": "Alt", "s": "Sym", "c": "Cyclic"})
_ARITY = {"Alt": 1, "Sym": 1, "Cyclic": 1, "Wreath": 2}

# simple-group type of the socle, used for exception-table lookups
SOCLE_TYPE = {"SL": "PSL", "PSL": "PSL", "GL": "PSL", "PGL": "PSL",
              "Sp": "PSp", "PSp": "PSp",
              "SU": "PSU", "PSU": "PSU", "GU": "PSU", "PGU": "PSU",
              "OmegaPlus": "POmegaPlus", "OmegaMinus": "POmegaMinus"}


# -- specs -----------------------------------------------------------------------


@dataclass(frozen=True)
class GroupSpec:
    family: str
    n: int = 0
    q: int | None = None
    inner: tuple = ()  # nested specs for Wreath (one) and Direct (two or more)
    t: int | None = None

    def __str__(self) -> str:
        if self.family == "Wreath":
            return f"Wreath({self.inner[0]},{self.t})"
        if self.family == "Direct":
            return "Direct(" + ",".join(str(s) for s in self.inner) + ")"
        if self.q is None:
            return f"{self.family}({self.n})"
        return f"{self.family}({self.n},{self.q})"

    def to_dict(self) -> dict:
        d: dict = {"family": self.family}
        if self.family in ("Wreath", "Direct"):
            d["inner"] = [s.to_dict() for s in self.inner]
            if self.t is not None:
                d["t"] = self.t
        else:
            d["n"] = self.n
            if self.q is not None:
                d["q"] = self.q
        return d


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z]+[+-]?)|(?P<sym>[(),]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError("unexpected character", text, pos, "name, integer or one of ( ) ,")
            kind = m.lastgroup
            self.toks.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", "", len(self.text))

    def take(self, kind: str, value: str | None = None, expected: str = ""):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            what = tok[1] or "end of input"
            raise ParseError(f"unexpected {what!r}", self.text, tok[2], expected or value or kind)
        self.i += 1
        return tok

    def spec(self) -> GroupSpec:
        _, name, pos = self.take("name", expected="group family name")
        fam = _CANON.get(name.lower())
        if fam is None:
            raise ParseError(f"unknown family {name!r}", self.text, pos, "one of " + ", ".join(FAMILIES))
        self.take("sym", "(", expected="'('")
        args = [self.arg()]
        while self.peek()[:2] == ("sym", ","):
            self.i += 1
            args.append(self.arg())
        self.take("sym", ")", expected="',' or ')'")
        return self._make(fam, args, pos)

    def arg(self):
        tok = self.peek()
        if tok[0] == "int":
            self.i += 1
            return (int(tok[1]), tok[2])
        if tok[0] == "name":
            return self.spec()
        raise ParseError(f"unexpected {tok[1] or 'end of input'!r}", self.text, tok[2], "integer or group spec")

    def _make(self, fam: str, args: list, pos: int) -> GroupSpec:
        def need_int(a, what):
            if not isinstance(a, tuple):
                raise ParseError(f"{fam}: {what} must be an integer", self.text, pos, "integer")
            return a[0]

        if fam == "Direct":
            if len(args) < 2 or not all(isinstance(a, GroupSpec) for a in args):
                raise ParseError("Direct takes two or more group specs", self.text, pos, "group specs")
            return GroupSpec("Direct", inner=tuple(args))
        if fam == "Wreath":
            if len(args) != 2 or not isinstance(args[0], GroupSpec):
                raise ParseError("Wreath takes (group spec, top degree)", self.text, pos, "group spec, integer")
            return GroupSpec("Wreath", inner=(args[0],), t=need_int(args[1], "top degree"))
        arity = _ARITY.get(fam, 2)
        if len(args) != arity:
            raise ParseError(f"{fam} takes {arity} integer argument(s)", self.text, pos,
                             "integer" if arity == 1 else "integer, integer")
        if arity == 1:
            return GroupSpec(fam, n=need_int(args[0], "degree"))
        n = need_int(args[0], "dimension")
        q = need_int(args[1], "field size")
        if prime_power(q) is None:
            raise ParseError(f"{q} is not a prime power", self.text, args[1][1], "prime power field size")
        return GroupSpec(fam, n=n, q=q)


def parse_group_spec(text: str) -> GroupSpec:
    """Parse ``PSL(2,7)``, ``Wreath(Alt(5),2)``, ``Direct(Alt(5),Cyclic(3))`` and the like."""
    p = _Parser(text)
    spec = p.spec()
    tok = p.peek()
    if tok[0] != "eof":
        raise ParseError(f"trailing input {tok[1]!r}", text, tok[2], "end of input")
    return spec


def check_caps(spec: GroupSpec) -> None:
    f, n, q = spec.family, spec.n, spec.q
    bad = None
    if f in ("Alt", "Sym"):
        if not 1 <= n <= 12:
            bad = "n must be in 1..12"
    elif f == "Cyclic":
        if not 1 <= n <= DEGREE_CAP:
            bad = f"n must be in 1..{DEGREE_CAP}"
    elif f in ("SL", "PSL", "GL", "PGL"):
        if not ((n == 2 and q <= 81) or (3 <= n <= 4 and q <= 9)):
            bad = "need n = 2 with q <= 81, or 3 <= n <= 4 with q <= 9"
    elif f in ("Sp", "PSp"):
        if (n, q) != (4, 3):
            bad = "only Sp(4,3) is supported"
    elif f in ("SU", "PSU", "GU", "PGU"):
        if not (2 <= n <= 4 and q in (2, 3)):
            bad = "need 2 <= n <= 4 and q in {2, 3}"
    elif f in ("OmegaPlus", "OmegaMinus"):
        if (n, q) != (6, 3):
            bad = "only dimension 6 over GF(3) is supported"
    elif f == "Wreath":
        if spec.t not in (2, 3, 4):
            bad = "top degree must be 2, 3 or 4"
        check_caps(spec.inner[0])
    elif f == "Direct":
        for s in spec.inner:
            check_caps(s)
    if bad:
        raise UnsupportedSpec(f"{spec}: {bad}")


# -- order formulas ------------------------------------------------------------------


def _gl(n, q):
    return q ** (n * (n - 1) // 2) * math.prod(q**i - 1 for i in range(1, n + 1))


def _gu(n, q):
    return q ** (n * (n - 1) // 2) * math.prod(q**i - (-1) ** i for i in range(1, n + 1))


def _sp(n, q):
    m = n // 2
    return q ** (m * m) * math.prod(q ** (2 * i) - 1 for i in range(1, m + 1))


def _omega(n, q, eps):
    m = n // 2
    d = math.gcd(2, q - 1)
    return q ** (m * (m - 1)) * (q**m - eps) * math.prod(q ** (2 * i) - 1 for i in range(1, m)) // d


def order_formula(spec: GroupSpec) -> int:
    """Closed-form group order."""
    f, n, q = spec.family, spec.n, spec.q
    if f == "Alt":
        return max(1, math.factorial(n) // 2)
    if f == "Sym":
        return math.factorial(n)
    if f == "Cyclic":
        return n
    if f == "GL":
        return _gl(n, q)
    if f in ("SL", "PGL"):
        return _gl(n, q) // (q - 1)
    if f == "PSL":
        return _gl(n, q) // (q - 1) // math.gcd(n, q - 1)
    if f == "Sp":
        return _sp(n, q)
    if f == "PSp":
        return _sp(n, q) // math.gcd(2, q - 1)
    if f == "GU":
        return _gu(n, q)
    if f in ("SU", "PGU"):
        return _gu(n, q) // (q + 1)
    if f == "PSU":
        return _gu(n, q) // (q + 1) // math.gcd(n, q + 1)
    if f == "OmegaPlus":
        return _omega(n, q, 1)
    if f == "OmegaMinus":
        return _omega(n, q, -1)
    if f == "Wreath":
        return order_formula(spec.inner[0]) ** spec.t * math.factorial(spec.t)
    if f == "Direct":
        return math.prod(order_formula(s) for s in spec.inner)
    raise UnsupportedSpec(f"no order formula for {f}")


# -- vectors and actions ---------------------------------------------------------------


def all_vectors(F: PrimePowerField, n: int) -> Iterator[tuple]:
    return itertools.product(range(F.order), repeat=n)


def nonzero_vectors(F: PrimePowerField, n: int) -> list[tuple]:
    return [v for v in all_vectors(F, n) if any(v)]


def normalize(F: PrimePowerField, v: Sequence[int]) -> tuple:
    """Scale so the first nonzero coordinate is 1."""
    lead = next(a for a in v if a)
    if lead == 1:
        return tuple(v)
    s = F.inv_t[lead]
    return tuple(F.mul_t[s][a] for a in v)


def projective_points(F: PrimePowerField, n: int) -> list[tuple]:
    return [v for v in all_vectors(F, n) if any(v) and next(a for a in v if a) == 1]


def _basis(n: int) -> list[tuple]:
    return [tuple(int(i == j) for j in range(n)) for i in range(n)]


def _vector_action(M: Matrix, pts: list[tuple], index: dict) -> Perm:
    try:
        return tuple(index[M.row_vector_times(v)] for v in pts)
    except KeyError:
        raise GeneratorValidationFailed("matrix does not preserve the point set") from None


def _projective_action(M: Matrix, pts: list[tuple], index: dict) -> Perm:
    F = M.field
    return tuple(index[normalize(F, M.row_vector_times(v))] for v in pts)


def _form_level_domain(F: PrimePowerField, n: int, form: ClassicalForm | None) -> list[tuple]:
    """Nonzero vectors whose form value equals that of some basis vector.

    The set is invariant under isometries and contains a basis, so the
    action on it is faithful.
    """
    vecs = nonzero_vectors(F, n)
    if form is None or form.kind in ("none", "symplectic"):
        return vecs
    value = form.Q if form.kind == "quadratic" else (lambda v: form.pair(v, v))
    levels = {value(e) for e in _basis(n)}
    return [v for v in vecs if value(v) in levels]


def to_permutation(gens: Sequence[Matrix], action: str = "projective_points",
                   domain: list[tuple] | None = None) -> tuple[PermutationGroup, int]:
    """Permutation image of ``<gens>`` and the order of the action kernel.

    The kernel of the projective action is the group of scalar matrices in
    ``<gens>``; it is found by sifting each scalar in the faithful vector
    action. The vector action is faithful, so its kernel order is 1.
    """
    if not gens:
        raise ValueError("need at least one generator")
    F, n = gens[0].field, gens[0].n
    if action == "vectors":
        pts = domain if domain is not None else None
        size = len(pts) if pts is not None else F.order**n - 1
        if F.order**n > 10**5 or size > DEGREE_CAP:
            raise ActionTooLarge(f"{size} vectors exceeds the {DEGREE_CAP}-point cap")
        pts = pts if pts is not None else nonzero_vectors(F, n)
        index = {v: i for i, v in enumerate(pts)}
        return PermutationGroup([_vector_action(M, pts, index) for M in gens], degree=len(pts)), 1
    if action != "projective_points":
        raise ValueError(f"unknown action {action!r}")
    size = (F.order**n - 1) // (F.order - 1)
    if size > DEGREE_CAP:
        raise ActionTooLarge(f"{size} projective points exceeds the {DEGREE_CAP}-point cap")
    pts = projective_points(F, n)
    index = {v: i for i, v in enumerate(pts)}
    image = PermutationGroup([_projective_action(M, pts, index) for M in gens], degree=len(pts))
    lin, _ = to_permutation(gens, "vectors", domain)
    return image, len(scalars_in(lin, gens[0].field, n, domain))


def scalars_in(lin: PermutationGroup, F: PrimePowerField, n: int,
               domain: list[tuple] | None = None) -> list[int]:
    """Field indices s with s*I in the group given by its vector action."""
    pts = domain if domain is not None else nonzero_vectors(F, n)
    index = {v: i for i, v in enumerate(pts)}
    out = []
    for s in range(1, F.order):
        M = Matrix.diag(F, [FieldElement(F, s)] * n)
        try:
            p = _vector_action(M, pts, index)
        except GeneratorValidationFailed:
            continue
        if lin.contains(p):
            out.append(s)
    return out


# -- classical data ----------------------------------------------------------------------


def _field_and_form(family: str, n: int, q: int) -> tuple[PrimePowerField, ClassicalForm | None]:
    base = PROJECTIVE.get(family, family)
    if base in ("SU", "GU"):
        return GF(q * q), hermitian_form(GF(q * q), n)
    F = GF(q)
    if base == "Sp":
        return F, symplectic_form(F, n)
    if base == "OmegaPlus":
        return F, quadratic_form(F, n, 1)
    if base == "OmegaMinus":
        return F, quadratic_form(F, n, -1)
    return F, None


def _needs_det_one(base: str) -> bool:
    return base in ("SL", "SU")


def _scalar_kernel_by_conditions(base: str, F: PrimePowerField, n: int) -> list[int]:
    """Scalars s with s*I satisfying the defining conditions of the family."""
    out = []
    for s in range(1, F.order):
        if base in ("SL",) and F.power(s, n) != 1:
            continue
        if base == "Sp" and F.mul_t[s][s] != 1:
            continue
        if base in ("SU", "GU") and F.norm_sub(s) != 1:
            continue
        if base == "SU" and F.power(s, n) != 1:
            continue
        out.append(s)
    return out


def _elementary(F: PrimePowerField, n: int, i: int, j: int, a: int) -> Matrix:
    rows = [[int(r == c) for c in range(n)] for r in range(n)]
    rows[i][j] = a
    return Matrix._raw(F, tuple(tuple(r) for r in rows))


def _rank_one_update(F: PrimePowerField, n: int, terms) -> Matrix:
    """I + sum c * col_vec * row_covec (column convention)."""
    add, mul = F.add_t, F.mul_t
    rows = [[int(r == c) for c in range(n)] for r in range(n)]
    for c, col, covec in terms:
        for r in range(n):
            if col[r]:
                f = mul[c][col[r]]
                for k in range(n):
                    if covec[k]:
                        rows[r][k] = add[rows[r][k]][mul[f][covec[k]]]
    return Matrix._raw(F, tuple(tuple(r) for r in rows))


def _covector(form: ClassicalForm, v: Sequence[int]) -> tuple:
    """Row of coefficients of u -> kappa(u, v)."""
    F = form.field
    if form.kind == "hermitian":
        v = [F.conj(a) for a in v]
    return form.gram.apply(v)


def _fe(F: PrimePowerField, v: Sequence[int]) -> list[FieldElement]:
    """Wrap a vector of field indices (plain ints would be read as prime-field integers)."""
    return [FieldElement(F, a) for a in v]


def _trace_zero(F: PrimePowerField) -> list[int]:
    return [a for a in range(1, F.order) if F.add_t[a][F.conj(a)] == 0]


def _norm_one(F: PrimePowerField) -> list[int]:
    return [a for a in range(1, F.order) if F.norm_sub(a) == 1]


def _unitary_frames(F: PrimePowerField, n: int) -> Iterator[Matrix]:
    """Every isometry of the identity Hermitian form, as matrices with orthonormal columns."""
    unit = [v for v in all_vectors(F, n) if _herm(F, v, v) == 1]

    def extend(cols):
        if len(cols) == n:
            yield Matrix._raw(F, tuple(zip(*cols)))
            return
        for v in unit:
            if all(_herm(F, v, c) == 0 for c in cols):
                yield from extend(cols + [v])

    yield from extend([])


def _herm(F: PrimePowerField, u: Sequence[int], v: Sequence[int]) -> int:
    s = 0
    for a, b in zip(u, v):
        if a and b:
            s = F.add_t[s][F.mul_t[a][F.conj(b)]]
    return s


def _candidates(base: str, F: PrimePowerField, n: int, form: ClassicalForm | None) -> Iterator[Matrix]:
    """Deterministic candidate generators: torus elements first, then root elements."""
    w = F.primitive
    if base in ("SL", "GL"):
        if base == "GL":
            yield Matrix.diag(F, [FieldElement(F, w)] + [1] * (n - 1))
        yield Matrix.diag(F, [FieldElement(F, w), FieldElement(F, F.inv_t[w])] + [1] * (n - 2))
        for k in range(F.degree):
            a = F.power(w, k)
            for i, j in itertools.permutations(range(n), 2):
                yield _elementary(F, n, i, j, a)
        return
    if base == "Sp":
        vecs = _basis(n) + [tuple(a + b for a, b in zip(x, y))
                            for x, y in itertools.combinations(_basis(n), 2)]
        for lam in range(1, F.order):
            for v in vecs:
                yield symplectic_transvection(form, _fe(F, v), FieldElement(F, lam))
        return
    if base in ("SU", "GU"):
        norm1 = _norm_one(F)
        if base == "GU":
            gen = next(a for a in norm1 if F.mult_order(a) == len(norm1))
            yield Matrix.diag(F, [FieldElement(F, gen)] + [1] * (n - 1))
        for mu in norm1:
            if mu != 1 and n >= 2:
                yield Matrix.diag(F, [FieldElement(F, mu), FieldElement(F, F.inv_t[mu])] + [1] * (n - 2))
        iso = [v for v in projective_points(F, n) if form.pair(v, v) == 0]
        for lam in _trace_zero(F):
            for v in iso:
                yield unitary_transvection(form, _fe(F, v), FieldElement(F, lam))
        # solvable cases such as SU(3,2) need more; walk all isometries lazily
        for M in _unitary_frames(F, n):
            if base == "GU" or M.det().index == 1:
                yield M
        return
    if base in ("OmegaPlus", "OmegaMinus"):
        sing = [v for v in projective_points(F, n) if form.Q(v) == 0]
        for a, b in itertools.combinations(sing, 2):
            if form.pair(a, b) == 0:
                yield siegel_element(form, _fe(F, a), _fe(F, b), FieldElement(F, 1))
        return
    raise UnsupportedSpec(base)  # pragma: no cover


# -- distinguished elements --------------------------------------------------------------


def transvection(n: int, q: int | PrimePowerField, direction: Sequence, functional: Sequence) -> Matrix:
    """v -> v + functional(v) * direction (column convention)."""
    F = q if isinstance(q, PrimePowerField) else GF(q)
    d = [F(x).index for x in direction]
    f = [F(x).index for x in functional]
    if len(d) != n or len(f) != n:
        raise ValueError("vectors must have length n")
    if not any(d) or not any(f):
        raise ValueError("direction and functional must be nonzero")
    s = 0
    for a, b in zip(f, d):
        s = F.add_t[s][F.mul_t[a][b]]
    if s:
        raise NotIsotropicPair("functional(direction) must be 0")
    return _rank_one_update(F, n, [(1, d, f)])


def symplectic_transvection(form: ClassicalForm, a: Sequence, lam) -> Matrix:
    """u -> u + lam * kappa(u, a) * a."""
    F = form.field
    a = [F(x).index for x in a]
    lam = F(lam).index
    return _rank_one_update(F, form.n, [(lam, a, _covector(form, a))])


def unitary_transvection(form: ClassicalForm, a: Sequence, lam) -> Matrix:
    """u -> u + lam * h(u, a) * a for isotropic a and lam + conj(lam) = 0."""
    F = form.field
    a = [F(x).index for x in a]
    lam = F(lam).index
    if form.pair(a, a):
        raise NotIsotropicPair("unitary transvection needs an isotropic vector")
    if F.add_t[lam][F.conj(lam)]:
        raise PreconditionViolated("scalar must satisfy lam + conj(lam) = 0")
    return _rank_one_update(F, form.n, [(lam, a, _covector(form, a))])


def unitary_reflection(n: int, q: int, axis: Sequence, eigenvalue, form: ClassicalForm | None = None) -> Matrix:
    """Fix axis-perp pointwise and scale ``axis`` by ``eigenvalue`` (identity Gram by default)."""
    F = GF(q * q)
    form = form or hermitian_form(F, n)
    a = [F(x).index for x in axis]
    e = F(eigenvalue).index
    if e == 1 or F.power(e, 3) != 1 or F.norm_sub(e) != 1:
        raise PreconditionViolated("eigenvalue must be a norm-one cube root of unity other than 1")
    haa = form.pair(a, a)
    if haa == 0:
        raise IsotropicAxis("axis is isotropic")
    c = F.mul_t[F.sub_t[e][1]][F.inv_t[haa]]
    return _rank_one_update(F, n, [(c, a, _covector(form, a))])


def siegel_element(form: ClassicalForm, a: Sequence, b: Sequence, lam) -> Matrix:
    """u -> u + lam*kappa(u,a)*b - lam*kappa(u,b)*a for a, b spanning a totally singular line."""
    F = form.field
    a = [F(x).index for x in a]
    b = [F(x).index for x in b]
    lam = F(lam).index
    failed = []
    if form.Q(a):
        failed.append("Q(a) != 0")
    if form.Q(b):
        failed.append("Q(b) != 0")
    if form.pair(a, b):
        failed.append("kappa(a,b) != 0")
    if failed:
        raise PreconditionViolated("; ".join(failed))
    return _rank_one_update(F, form.n, [(lam, b, _covector(form, a)),
                                        (F.neg_t[lam], a, _covector(form, b))])


@dataclass(frozen=True)
class DistinguishedElement:
    kind: str  # transvection | unitary_reflection | siegel | p_cycle | three_cycle | custom
    data: dict = dc_field(default_factory=dict, hash=False, compare=False)
    matrix: Matrix | None = None
    perm: Perm | None = None


def distinguished_element(built: "BuiltGroup", kind: str) -> DistinguishedElement:
    """A standard representative of the named kind, realized in ``built``."""
    spec = built.spec
    if spec.family in ("Alt", "Sym"):
        n = spec.n
        if kind == "three_cycle" and n >= 3:
            return DistinguishedElement(kind, {"support": [0, 1, 2]}, perm=(1, 2, 0) + tuple(range(3, n)))
        raise UnsupportedSpec(f"{kind} not defined for {spec}")
    if built.form is None and spec.family not in MATRIX_FAMILIES:
        raise UnsupportedSpec(f"{kind} not defined for {spec}")
    F, n, form = built.field, built.n, built.form
    base = PROJECTIVE.get(spec.family, spec.family)
    if kind == "transvection":
        if base in ("SL", "GL"):
            M = transvection(n, F, _basis(n)[0], _basis(n)[1])
        elif base == "Sp":
            M = symplectic_transvection(form, _basis(n)[0], 1)
        elif base in ("SU", "GU"):
            lam = _trace_zero(F)[0]
            iso = next(v for v in projective_points(F, n) if form.pair(v, v) == 0)
            M = unitary_transvection(form, _fe(F, iso), FieldElement(F, lam))
        else:
            raise UnsupportedSpec(f"no transvections in {spec}")
    elif kind == "unitary_reflection":
        if base not in ("SU", "GU"):
            raise UnsupportedSpec(f"no unitary reflections in {spec}")
        q = spec.q
        cube = next((a for a in range(2, F.order) if F.power(a, 3) == 1 and F.norm_sub(a) == 1), None)
        if cube is None:
            raise UnsupportedSpec(f"GF({q * q}) has no norm-one cube root of unity")
        M = unitary_reflection(n, q, _basis(n)[0], FieldElement(F, cube), form)
    elif kind == "siegel":
        if base not in ("OmegaPlus", "OmegaMinus"):
            raise UnsupportedSpec(f"no Siegel elements in {spec}")
        sing = [v for v in projective_points(F, n) if form.Q(v) == 0]
        a, b = next((a, b) for a, b in itertools.combinations(sing, 2) if form.pair(a, b) == 0)
        M = siegel_element(form, _fe(F, a), _fe(F, b), 1)
    else:
        raise UnsupportedSpec(f"unknown kind {kind!r}")
    return DistinguishedElement(kind, {}, matrix=M, perm=built.perm_of(M))


# -- built groups ------------------------------------------------------------------------


@dataclass
class BuiltGroup:
    """A permutation realization plus the matrix data it came from, if any."""

    spec: GroupSpec
    group: PermutationGroup
    action: str  # natural | vectors | projective_points | wreath | direct
    field: PrimePowerField | None = None
    form: ClassicalForm | None = None
    matrix_gens: list = dc_field(default_factory=list)
    points: list | None = None
    kernel_order: int = 1  # scalar matrices acting trivially (projective action)
    matrix_order: int | None = None
    wreath: WreathProduct | None = None
    factors: list = dc_field(default_factory=list)
    _index: dict | None = dc_field(default=None, repr=False)
    _projective: tuple | None = dc_field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def order(self) -> int:
        return self.group.order()

    @property
    def is_matrix_group(self) -> bool:
        return self.field is not None

    @property
    def socle_type(self) -> str | None:
        return SOCLE_TYPE.get(self.spec.family)

    def perm_of(self, M: Matrix) -> Perm:
        if self.action == "vectors":
            return _vector_action(M, self.points, self._index)
        if self.action == "projective_points":
            return _projective_action(M, self.points, self._index)
        raise ValueError("perm_of applies to matrix groups only")

    def lift(self, p: Perm) -> Matrix:
        """A matrix inducing ``p`` (unique for vectors, up to scalars for projective points)."""
        F, n = self.field, self.n
        basis = _basis(n)
        if self.action == "vectors":
            rows = [self.points[p[self._index[e]]] for e in basis]
            return Matrix._raw(F, tuple(rows))
        if self.action != "projective_points":
            raise ValueError("lift applies to matrix groups only")
        w = [self.points[p[self._index[e]]] for e in basis]
        ones = tuple([1] * n)
        u = self.points[p[self._index[ones]]]
        W = Matrix._raw(F, tuple(w))
        # c W = u  =>  c = u W^-1
        c = W.inverse().row_vector_times(u)
        rows = tuple(tuple(F.mul_t[c[i]][a] for a in w[i]) for i in range(n))
        return Matrix._raw(F, rows)

    def projective_image(self) -> tuple[PermutationGroup, int]:
        """(image on projective points, order of the scalar kernel)."""
        if not self.is_matrix_group:
            raise ValueError("projective image applies to matrix groups only")
        if self.action == "projective_points":
            return self.group, self.kernel_order
        if self._projective is None:
            F, n = self.field, self.n
            pts = projective_points(F, n)
            if len(pts) > DEGREE_CAP:
                raise ActionTooLarge(f"{len(pts)} projective points")
            index = {v: i for i, v in enumerate(pts)}
            img = PermutationGroup([_projective_action(M, pts, index) for M in self.matrix_gens],
                                   degree=len(pts))
            kernel = len(scalars_in(self.group, F, n, self.points))
            if img.order() * kernel != self.group.order():
                raise GeneratorValidationFailed("projective image order disagrees with kernel")
            self._projective = (img, kernel)
        return self._projective

    def projective_built(self) -> "BuiltGroup":
        """The same group acting on projective points (scalar kernel removed)."""
        if self.action == "projective_points":
            return self
        img, kernel = self.projective_image()
        pts = projective_points(self.field, self.n)
        return BuiltGroup(self.spec, img, "projective_points", self.field, self.form,
                          list(self.matrix_gens), pts, kernel, self.matrix_order,
                          _index={v: i for i, v in enumerate(pts)})


def _build_natural(spec: GroupSpec) -> BuiltGroup:
    n = spec.n
    gens: list[Perm] = []
    if spec.family == "Cyclic":
        if n > 1:
            gens = [tuple((i + 1) % n for i in range(n))]
    elif spec.family == "Sym":
        if n >= 2:
            gens = [(1, 0) + tuple(range(2, n))]
            if n >= 3:
                gens.append(tuple((i + 1) % n for i in range(n)))
    elif spec.family == "Alt":
        if n >= 3:
            gens = [(1, 2, 0) + tuple(range(3, n))]
            if n >= 4:
                if n % 2:
                    gens.append(tuple((i + 1) % n for i in range(n)))
                else:
                    gens.append((0,) + tuple(1 + i % (n - 1) for i in range(1, n)))
    return BuiltGroup(spec, PermutationGroup(gens, degree=n), "natural")


def _build_matrix(spec: GroupSpec) -> BuiltGroup:
    fam, n, q = spec.family, spec.n, spec.q
    base = PROJECTIVE.get(fam, fam)
    projective = fam in PROJECTIVE
    F, form = _field_and_form(fam, n, q)
    linear_order = order_formula(GroupSpec(base, n, q))
    if projective:
        pts = projective_points(F, n)
        kernel = len(_scalar_kernel_by_conditions(base, F, n))
        target = linear_order // kernel
        act = _projective_action
        action = "projective_points"
    else:
        pts = _form_level_domain(F, n, form)
        kernel = 1
        target = linear_order
        act = _vector_action
        action = "vectors"
    if len(pts) > DEGREE_CAP:
        raise ActionTooLarge(f"{spec}: {len(pts)} points exceeds the {DEGREE_CAP}-point cap")
    index = {v: i for i, v in enumerate(pts)}
    G = PermutationGroup([], degree=len(pts))
    gens: list[Matrix] = []
    for M in _candidates(base, F, n, form):
        if form is not None and not form_preserved(M, form):
            raise GeneratorValidationFailed(f"{spec}: candidate does not preserve the form")
        if _needs_det_one(base) and M.det().index != 1:
            raise GeneratorValidationFailed(f"{spec}: candidate has determinant != 1")
        if G.add_generator(act(M, pts, index)):
            gens.append(M)
            if G.order() >= target:
                break
    if G.order() != target:
        raise GeneratorValidationFailed(f"{spec}: generated order {G.order()} != {target}")
    return BuiltGroup(spec, G, action, F, form, gens, pts, kernel, linear_order, _index=index)


def _build_wreath(spec: GroupSpec) -> BuiltGroup:
    inner = build(spec.inner[0])
    wp = WreathProduct(inner.group, spec.t)
    return BuiltGroup(spec, wp.group, "wreath", wreath=wp, factors=[inner])


def _build_direct(spec: GroupSpec) -> BuiltGroup:
    parts = [build(s) for s in spec.inner]
    degree = sum(p.group.degree for p in parts)
    if degree > DEGREE_CAP:
        raise ActionTooLarge(f"{spec}: degree {degree} exceeds the {DEGREE_CAP}-point cap")
    gens = []
    off = 0
    for p in parts:
        d = p.group.degree
        p.group._ensure()
        for g in p.group.gens:
            gens.append(tuple(range(off)) + tuple(off + x for x in g) + tuple(range(off + d, degree)))
        off += d
    return BuiltGroup(spec, PermutationGroup(gens, degree=degree), "direct", factors=parts)


_BUILD_CACHE: dict[GroupSpec, BuiltGroup] = {}


def build(spec: GroupSpec | str) -> BuiltGroup:
    """Faithful permutation realization of ``spec`` (cached per process)."""
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    if spec in _BUILD_CACHE:
        return _BUILD_CACHE[spec]
    check_caps(spec)
    if spec.family in ("Alt", "Sym", "Cyclic"):
        out = _build_natural(spec)
    elif spec.family == "Wreath":
        out = _build_wreath(spec)
    elif spec.family == "Direct":
        out = _build_direct(spec)
    else:
        out = _build_matrix(spec)
    if out.group.order() != order_formula(spec):
        raise GeneratorValidationFailed(f"{spec}: order {out.group.order()} != formula {order_formula(spec)}")
    _BUILD_CACHE[spec] = out
    return out


# -- structural detection ---------------------------------------------------------------


def element_kind(built: BuiltGroup, p: Perm) -> str:
    """Classify an element of a classical group by the shape of (sA - I).

    Returns ``transvection`` (rank 1, square zero), ``reflection`` (rank 1,
    semisimple), ``long_root`` (orthogonal groups: rank 2, square zero,
    totally singular image) or ``other``. For projective actions every
    scalar multiple of the lifted matrix is tried. Permutation groups in
    their natural action report ``three_cycle`` / ``p_cycle`` for single
    cycles of prime length.
    """
    if not built.is_matrix_group:
        cs = cycles(p)
        if len(cs) == 1:
            return "three_cycle" if len(cs[0]) == 3 else ("p_cycle" if _isprime(len(cs[0])) else "other")
        return "other"
    A = built.lift(p)
    F, n = built.field, built.n
    ident = Matrix.identity(F, n)
    scalars = range(1, F.order) if built.action == "projective_points" else (1,)
    quadratic = built.form is not None and built.form.kind == "quadratic"
    for s in scalars:
        N = A.scale(FieldElement(F, s)) - ident
        r = N.rank()
        if r == 0:
            return "identity"
        zero_sq = (N * N).rank() == 0
        if r == 1:
            return "transvection" if zero_sq else "reflection"
        if r == 2 and zero_sq and quadratic:
            cols = [tuple(c) for c in zip(*N.rows) if any(c)]
            if all(built.form.Q(v) == 0 for v in cols) and all(
                    built.form.pair(u, v) == 0 for u, v in itertools.combinations(cols, 2)):
                return "long_root"
    return "other"


def _isprime(k: int) -> bool:
    return k >= 2 and all(k % d for d in range(2, int(k**0.5) + 1))


def element_order(p: Perm) -> int:
    return perm_order(p)


def fixed_space_dim(M: Matrix) -> int:
    return M.n - (M - Matrix.identity(M.field, M.n)).rank()


__all__ = [
    "GroupSpec", "parse_group_spec", "check_caps", "order_formula", "build", "BuiltGroup",
    "to_permutation", "transvection", "symplectic_transvection", "unitary_transvection",
    "unitary_reflection", "siegel_element", "DistinguishedElement", "distinguished_element",
    "element_kind", "projective_points", "nonzero_vectors", "fixed_space_dim", "identity",
]
