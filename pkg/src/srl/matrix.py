"""Dense square matrices over small fields, and classical forms.

Matrices act on column vectors for form bookkeeping (``A^T G A^sigma = G``);
the permutation actions in :mod:`srl.atlas` use the equivalent row action
``v -> v A`` so that matrix products map to left-to-right permutation products.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import (DimensionMismatch, FieldMismatch, OrderCapExceeded,
                     SingularMatrix)
from .field import FieldElement, PrimePowerField

MATRIX_DIM_CAP = 8
ORDER_CAP = 10**6

Row = tuple


def _idx(F: PrimePowerField, x) -> int:
    if isinstance(x, FieldElement):
        if x.field is not F:
            raise FieldMismatch("entry from another field")
        return x.index
    if isinstance(x, int):
        return x % F.char
    raise TypeError(f"bad matrix entry {x!r}")


class Matrix:
    """Immutable n x n matrix; entries stored as field indices."""

    __slots__ = ("field", "rows", "n", "_hash")

    def __init__(self, field: PrimePowerField, rows: Sequence[Sequence]):
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DimensionMismatch("matrix must be square and non-empty")
        if n > MATRIX_DIM_CAP:
            raise DimensionMismatch(f"dimension {n} exceeds cap {MATRIX_DIM_CAP}")
        self.field = field
        self.n = n
        self.rows = tuple(tuple(_idx(field, x) for x in r) for r in rows)
        self._hash = None

    @classmethod
    def _raw(cls, field: PrimePowerField, rows: tuple) -> "Matrix":
        m = object.__new__(cls)
        m.field = field
        m.n = len(rows)
        m.rows = rows
        m._hash = None
        return m

    @classmethod
    def identity(cls, field: PrimePowerField, n: int) -> "Matrix":
        return cls._raw(field, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def diag(cls, field: PrimePowerField, entries: Sequence) -> "Matrix":
        n = len(entries)
        d = [_idx(field, x) for x in entries]
        return cls._raw(field, tuple(tuple(d[i] if i == j else 0 for j in range(n)) for i in range(n)))

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.field, self.rows[i][j])

    def _check(self, other: "Matrix") -> None:
        if other.field is not self.field:
            raise FieldMismatch("matrices over different fields")
        if other.n != self.n:
            raise DimensionMismatch("dimension mismatch")

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and other.field is self.field and other.rows == self.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __mul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        F = self.field
        add, mul = F.add_t, F.mul_t
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                s = 0
                for a, b in zip(r, c):
                    if a and b:
                        s = add[s][mul[a][b]]
                row.append(s)
            out.append(tuple(row))
        return Matrix._raw(F, tuple(out))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        add = self.field.add_t
        return Matrix._raw(self.field, tuple(tuple(add[a][b] for a, b in zip(r, s))
                                             for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        sub = self.field.sub_t
        return Matrix._raw(self.field, tuple(tuple(sub[a][b] for a, b in zip(r, s))
                                             for r, s in zip(self.rows, other.rows)))

    def scale(self, c) -> "Matrix":
        c = _idx(self.field, c)
        mul = self.field.mul_t
        return Matrix._raw(self.field, tuple(tuple(mul[c][a] for a in r) for r in self.rows))

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.field, tuple(zip(*self.rows)))

    def frobenius(self, power: int = 1) -> "Matrix":
        """Entrywise x -> x^(char^power)."""
        F = self.field
        e = F.char**power
        return Matrix._raw(F, tuple(tuple(F.power(a, e) if a else 0 for a in r) for r in self.rows))

    def conj(self) -> "Matrix":
        F = self.field
        return Matrix._raw(F, tuple(tuple(F.conj(a) for a in r) for r in self.rows))

    def is_identity(self) -> bool:
        return all(a == int(i == j) for i, r in enumerate(self.rows) for j, a in enumerate(r))

    def row_vector_times(self, v: Sequence[int]) -> tuple:
        """v A for a row vector of field indices."""
        F = self.field
        add, mul = F.add_t, F.mul_t
        out = [0] * self.n
        for vi, r in zip(v, self.rows):
            if vi:
                mrow = mul[vi]
                for j, a in enumerate(r):
                    if a:
                        out[j] = add[out[j]][mrow[a]]
        return tuple(out)

    def apply(self, v: Sequence[int]) -> tuple:
        """A v for a column vector of field indices."""
        F = self.field
        add, mul = F.add_t, F.mul_t
        out = []
        for r in self.rows:
            s = 0
            for a, b in zip(r, v):
                if a and b:
                    s = add[s][mul[a][b]]
            out.append(s)
        return tuple(out)

    # -- elimination ---------------------------------------------------------

    def _eliminate(self):
        """Row-reduce a copy; returns (rank, det, reduced rows) of self."""
        F = self.field
        add, mul, neg = F.add_t, F.mul_t, F.neg_t
        rows = [list(r) for r in self.rows]
        n = self.n
        det, rank = 1, 0
        for col in range(n):
            piv = next((i for i in range(rank, n) if rows[i][col]), None)
            if piv is None:
                det = 0
                continue
            if piv != rank:
                rows[piv], rows[rank] = rows[rank], rows[piv]
                det = neg[det]
            pv = rows[rank][col]
            det = mul[det][pv]
            pinv = F.inv_t[pv]
            rows[rank] = [mul[pinv][a] for a in rows[rank]]
            for i in range(n):
                if i != rank and rows[i][col]:
                    f = neg[rows[i][col]]
                    rows[i] = [add[a][mul[f][b]] for a, b in zip(rows[i], rows[rank])]
            rank += 1
        return rank, det, rows

    def rank(self) -> int:
        return self._eliminate()[0]

    def det(self) -> FieldElement:
        return FieldElement(self.field, self._eliminate()[1])

    def inverse(self) -> "Matrix":
        F = self.field
        n = self.n
        add, mul, neg = F.add_t, F.mul_t, F.neg_t
        rows = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((i for i in range(col, n) if rows[i][col]), None)
            if piv is None:
                raise SingularMatrix("matrix is not invertible")
            rows[piv], rows[col] = rows[col], rows[piv]
            pinv = F.inv_t[rows[col][col]]
            rows[col] = [mul[pinv][a] for a in rows[col]]
            for i in range(n):
                if i != col and rows[i][col]:
                    f = neg[rows[i][col]]
                    rows[i] = [add[a][mul[f][b]] for a, b in zip(rows[i], rows[col])]
        return Matrix._raw(F, tuple(tuple(r[n:]) for r in rows))

    def order(self, cap: int = ORDER_CAP) -> int:
        if self._eliminate()[1] == 0:
            raise SingularMatrix("order of a singular matrix")
        ident = Matrix.identity(self.field, self.n)
        P, k = self, 1
        while P != ident:
            P = P * self
            k += 1
            if k > cap:
                raise OrderCapExceeded(f"order exceeds {cap}")
        return k

    def __pow__(self, e: int) -> "Matrix":
        if e < 0:
            return self.inverse() ** (-e)
        result = Matrix.identity(self.field, self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(FieldElement(self.field, a)) for a in r) for r in self.rows)
        return f"Matrix({self.field!r}, [{body}])"


def matrix_ops(A: Matrix, B: Matrix | None, op: str, cap: int = ORDER_CAP):
    if op == "mul":
        return A * B
    if op == "inv":
        return A.inverse()
    if op == "det":
        return A.det()
    if op == "order":
        return A.order(cap)
    raise ValueError(f"unknown op {op!r}")


# -- classical forms -----------------------------------------------------------


@dataclass(frozen=True)
class ClassicalForm:
    """A bilinear/sesquilinear/quadratic form; ``gram`` is the (polar) Gram matrix."""

    kind: str  # none | symplectic | hermitian | quadratic
    gram: Matrix
    qdiag: tuple = dc_field(default=())  # Q(e_i) for quadratic kind

    def __post_init__(self):
        if self.kind not in ("none", "symplectic", "hermitian", "quadratic"):
            raise ValueError(f"unknown form kind {self.kind!r}")
        G = self.gram
        F = G.field
        if self.kind == "symplectic":
            if any(G.rows[i][i] for i in range(G.n)) or G.transpose() != G.scale(-1):
                raise ValueError("symplectic Gram must be alternating")
            if G.rank() != G.n:
                raise ValueError("symplectic Gram must be nondegenerate")
        elif self.kind == "hermitian":
            if G.transpose().conj() != G:
                raise ValueError("hermitian Gram must satisfy G^T = conj(G)")
        elif self.kind == "quadratic":
            if len(self.qdiag) != G.n:
                raise ValueError("quadratic form needs Q(e_i) for each basis vector")
            if G.transpose() != G:
                raise ValueError("polar form must be symmetric")
            for i in range(G.n):
                # polar(e_i, e_i) = 2 Q(e_i)
                if G.rows[i][i] != F.add_t[self.qdiag[i]][self.qdiag[i]]:
                    raise ValueError("polar form does not match Q on the diagonal")

    @property
    def field(self) -> PrimePowerField:
        return self.gram.field

    @property
    def n(self) -> int:
        return self.gram.n

    def pair(self, u: Sequence[int], v: Sequence[int]) -> int:
        """kappa(u, v) = u^T G v^sigma (field index)."""
        F = self.field
        if self.kind == "hermitian":
            v = [F.conj(a) for a in v]
        w = self.gram.apply(v)
        s = 0
        for a, b in zip(u, w):
            if a and b:
                s = F.add_t[s][F.mul_t[a][b]]
        return s

    def Q(self, v: Sequence[int]) -> int:
        if self.kind != "quadratic":
            raise ValueError("Q defined only for quadratic forms")
        F = self.field
        add, mul = F.add_t, F.mul_t
        s = 0
        for i, a in enumerate(v):
            if a:
                s = add[s][mul[self.qdiag[i]][mul[a][a]]]
        for i, j in itertools.combinations(range(len(v)), 2):
            if v[i] and v[j] and self.gram.rows[i][j]:
                s = add[s][mul[self.gram.rows[i][j]][mul[v[i]][v[j]]]]
        return s


def symplectic_form(F: PrimePowerField, n: int) -> ClassicalForm:
    """Antidiagonal form: kappa(e_i, e_{n-1-i}) = 1 for i < n/2, -1 after."""
    if n % 2:
        raise ValueError("symplectic forms need even dimension")
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][n - 1 - i] = 1 if i < n // 2 else F.neg_t[1]
    return ClassicalForm("symplectic", Matrix(F, rows))


def hermitian_form(F: PrimePowerField, n: int) -> ClassicalForm:
    return ClassicalForm("hermitian", Matrix.identity(F, n))


def quadratic_form(F: PrimePowerField, n: int, sign: int) -> ClassicalForm:
    """Hyperbolic-plus-diagonal normal form (odd characteristic).

    Plus type: basis e_1..e_m, f_1..f_m with Q = sum x_i x_{m+i}.
    Minus type: e_1..e_{m-1}, f_1..f_{m-1}, w_1, w_2 with
    Q = sum x_i x_{m-1+i} + x_{n-2}^2 - nu x_{n-1}^2, nu a non-square.
    """
    if F.char == 2:
        raise ValueError("quadratic normal form implemented for odd characteristic")
    if n % 2 or sign not in (1, -1):
        raise ValueError("need even dimension and sign +-1")
    m = n // 2
    h = m if sign == 1 else m - 1
    rows = [[0] * n for _ in range(n)]
    qd = [0] * n
    for i in range(h):
        rows[i][h + i] = rows[h + i][i] = 1
    if sign == -1:
        squares = {F.mul_t[a][a] for a in range(1, F.order)}
        nu = next(a for a in range(1, F.order) if a not in squares)
        qd[n - 2] = 1
        qd[n - 1] = F.neg_t[nu]
        rows[n - 2][n - 2] = F.add_t[1][1]
        rows[n - 1][n - 1] = F.add_t[qd[n - 1]][qd[n - 1]]
    return ClassicalForm("quadratic", Matrix(F, rows), tuple(qd))


def form_preserved(A: Matrix, form: ClassicalForm) -> bool:
    """A^T G A^sigma == G, plus Q(Av) = Q(v) on e_i and e_i + e_j for quadratic forms."""
    if A.field is not form.field:
        raise FieldMismatch("matrix and form over different fields")
    if A.n != form.n:
        raise DimensionMismatch("matrix and form differ in dimension")
    if form.kind == "none":
        return True
    As = A.conj() if form.kind == "hermitian" else A
    if A.transpose() * form.gram * As != form.gram:
        return False
    if form.kind == "quadratic":
        n = A.n
        basis = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        tests = basis + [tuple(a + b for a, b in zip(basis[i], basis[j]))
                         for i, j in itertools.combinations(range(n), 2)]
        for v in tests:
            if form.Q(A.apply(v)) != form.Q(v):
                return False
    return True
