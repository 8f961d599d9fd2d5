"""Small finite fields GF(p^k), q <= 81, with table arithmetic.

Elements are encoded as integers ``sum(c_i * p**i)`` where ``c`` is the
coefficient vector in the polynomial basis 1, t, ..., t^(k-1). The modulus is
the least monic irreducible polynomial of degree k under that same integer
encoding of its lower coefficients.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .errors import FieldMismatch, InvalidScalar, NotSemisimple

FIELD_CAP = 81


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def prime_power(q: int) -> tuple[int, int] | None:
    """(p, k) with q = p^k, or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return (p, k) if q == 1 else None
    return None  # pragma: no cover


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a by monic m (coefficient lists, low degree first)."""
    a = a[:]
    dm = len(m) - 1
    while len(a) - 1 >= dm and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _monic_polys(p: int, d: int):
    for low in itertools.product(range(p), repeat=d):
        yield list(reversed(low)) + [1]


def is_irreducible(m: list[int], p: int) -> bool:
    """Trial division by all monic polynomials of degree 1..deg/2."""
    deg = len(m) - 1
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(p, d):
            if not _poly_mod(m, f, p):
                return False
    return True


def least_irreducible(p: int, k: int) -> list[int]:
    if k == 1:
        return [0, 1]
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        m = low + [1]
        if is_irreducible(m, p):
            return m
    raise ValueError(f"no irreducible of degree {k} over GF({p})")  # pragma: no cover


class PrimePowerField:
    """GF(char^degree) with full addition/multiplication tables."""

    def __init__(self, char: int, degree: int = 1, modulus: list[int] | None = None):
        if not is_prime(char):
            raise ValueError(f"characteristic {char} is not prime")
        if degree < 1:
            raise ValueError("degree must be positive")
        q = char**degree
        if q > FIELD_CAP:
            raise ValueError(f"field size {q} exceeds cap {FIELD_CAP}")
        if modulus is None:
            modulus = least_irreducible(char, degree)
        modulus = [c % char for c in modulus]
        if len(modulus) != degree + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of the field degree")
        if degree > 1 and not is_irreducible(modulus, char):
            raise ValueError(f"modulus {modulus} is reducible over GF({char})")
        self.char = char
        self.degree = degree
        self.modulus = tuple(modulus)
        self.order = q
        self._build_tables()

    def _coeffs(self, a: int) -> list[int]:
        p = self.char
        return [(a // p**i) % p for i in range(self.degree)]

    def _encode(self, c: list[int]) -> int:
        return sum((ci % self.char) * self.char**i for i, ci in enumerate(c))

    def _build_tables(self) -> None:
        p, k, q = self.char, self.degree, self.order
        coeffs = [self._coeffs(a) for a in range(q)]
        self.add_t = [[self._encode([x + y for x, y in zip(coeffs[a], coeffs[b])])
                       for b in range(q)] for a in range(q)]
        self.neg_t = [self._encode([-x for x in coeffs[a]]) for a in range(q)]
        mod = list(self.modulus)
        mul_t = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                prod = [0] * (2 * k - 1)
                for i, x in enumerate(coeffs[a]):
                    if x:
                        for j, y in enumerate(coeffs[b]):
                            prod[i + j] += x * y
                prod = [c % p for c in prod]
                r = _poly_mod(prod, mod, p) if k > 1 else prod
                v = self._encode(r + [0] * (k - len(r)))
                mul_t[a][b] = mul_t[b][a] = v
        self.mul_t = mul_t
        self.inv_t = [0] * q
        for a in range(1, q):
            self.inv_t[a] = next(b for b in range(1, q) if mul_t[a][b] == 1)
        self.sub_t = [[self.add_t[a][self.neg_t[b]] for b in range(q)] for a in range(q)]
        self.frob_t = [self._pow(a, p) for a in range(q)]
        self.primitive = next(a for a in range(1, q) if self.mult_order(a) == q - 1)

    def _pow(self, a: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = self.mul_t[r][a]
        return r

    def power(self, a: int, e: int) -> int:
        if a == 0:
            if e <= 0:
                raise InvalidScalar("0 has no non-positive powers")
            return 0
        e %= self.order - 1
        r, base = 1, a
        while e:
            if e & 1:
                r = self.mul_t[r][base]
            base = self.mul_t[base][base]
            e >>= 1
        return r

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise InvalidScalar("0 has no multiplicative order")
        k, r = 1, a
        while r != 1:
            r = self.mul_t[r][a]
            k += 1
        return k

    def inverse(self, a: int) -> int:
        if a == 0:
            raise InvalidScalar("division by zero")
        return self.inv_t[a]

    def conj(self, a: int) -> int:
        """a -> a^r where r^2 is the field order (unitary involution)."""
        if self.degree % 2:
            raise ValueError("field has no involutory automorphism")
        r = self.char ** (self.degree // 2)
        return self.power(a, r) if a else 0

    def norm_sub(self, a: int) -> int:
        """a^(r+1): the norm to the index-2 subfield."""
        r = self.char ** (self.degree // 2)
        return self.power(a, r + 1) if a else 0

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise FieldMismatch("element from another field")
            return value
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self._encode(list(value)))
        if isinstance(value, int):
            # integers embed through the prime subfield
            return FieldElement(self, value % self.char)
        raise TypeError(f"cannot coerce {value!r}")

    def from_index(self, a: int) -> "FieldElement":
        if not 0 <= a < self.order:
            raise ValueError("index out of range")
        return FieldElement(self, a)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, a) for a in range(self.order)]

    @property
    def gen(self) -> "FieldElement":
        """The class of t (the polynomial generator)."""
        return FieldElement(self, self.char if self.degree > 1 else 1)

    def __repr__(self) -> str:
        return f"GF({self.order})"


@functools.lru_cache(maxsize=None)
def GF(q: int) -> PrimePowerField:
    pk = prime_power(q)
    if pk is None:
        raise ValueError(f"{q} is not a prime power")
    return PrimePowerField(*pk)


@dataclass(frozen=True)
class FieldElement:
    field: PrimePowerField
    index: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.field._coeffs(self.index))

    def _other(self, b) -> int:
        if isinstance(b, FieldElement):
            if b.field is not self.field:
                raise FieldMismatch(f"{b.field!r} vs {self.field!r}")
            return b.index
        if isinstance(b, int):
            return b % self.field.char
        return NotImplemented

    def __add__(self, b):
        return FieldElement(self.field, self.field.add_t[self.index][self._other(b)])

    __radd__ = __add__

    def __sub__(self, b):
        return FieldElement(self.field, self.field.sub_t[self.index][self._other(b)])

    def __rsub__(self, b):
        return FieldElement(self.field, self.field.sub_t[self._other(b)][self.index])

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_t[self.index])

    def __mul__(self, b):
        return FieldElement(self.field, self.field.mul_t[self.index][self._other(b)])

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inverse(self.index))

    def __truediv__(self, b):
        return self * FieldElement(self.field, self._other(b)).inverse()

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.power(self.index, e))

    def frobenius(self) -> "FieldElement":
        return FieldElement(self.field, self.field.frob_t[self.index])

    def conj(self) -> "FieldElement":
        return FieldElement(self.field, self.field.conj(self.index))

    def is_zero(self) -> bool:
        return self.index == 0

    def __eq__(self, b) -> bool:
        if isinstance(b, int):
            return self.index == b % self.field.char
        return isinstance(b, FieldElement) and b.field is self.field and b.index == self.index

    def __hash__(self) -> int:
        return hash((id(self.field), self.index))

    def __repr__(self) -> str:
        if self.field.degree == 1:
            return f"{self.index}"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                terms.append(f"{c if c != 1 or i == 0 else ''}{mono}")
        return "+".join(reversed(terms)) or "0"


def field_arithmetic(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    """Dispatch for add/mul/inv/frobenius."""
    if b is not None and a.field is not b.field:
        raise FieldMismatch("operands live in different fields")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "frobenius":
        return a.frobenius()
    raise ValueError(f"unknown op {op!r}")


def minimal_e(p: int, q: int) -> int:
    """Least e >= 1 with p | q^e - 1."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if q % p == 0:
        raise NotSemisimple(f"{p} divides {q}")
    e, r = 1, q % p
    while r != 1:
        r = r * q % p
        e += 1
    return e
