"""Exact arithmetic in prime-power fields F_q, q = p^e <= 2^20.

Elements are stored as integers ``c_0 + c_1 p + ... + c_{e-1} p^{e-1}`` where
``c_i`` are the coefficients of the polynomial residue modulo ``irr``
(constant term first).  Ordering for deterministic scans is the
lexicographic order on the coefficient vector, constant term compared first.
"""

from __future__ import annotations

import functools
import itertools
from typing import Iterator, Sequence

from sympy import factorint, isprime

from .errors import (
    DegreeOutOfRange,
    DivisionByZero,
    EvenCharacteristic,
    FieldMismatch,
    NonPrime,
    NotDividing,
    OrderTooLarge,
)

MAX_ORDER = 1 << 20
_LOG_TABLE_LIMIT = 1 << 16


def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m`` over Z_p."""
    a = _poly_trim(list(a))
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        lead = a[-1]
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - lead * mc) % p
        _poly_trim(a)
    return a


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """True if the monic ``poly`` (constant term first) has no monic factor of
    degree 1..deg-1 over Z_p.  Brute force; degrees here are tiny."""
    e = len(poly) - 1
    if e <= 1:
        return e == 1
    if poly[0] % p == 0:
        return False
    for d in range(1, e // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not _poly_mod(poly, divisor, p):
                return False
    return True


def _monic_in_lex_order(p: int, e: int) -> Iterator[list[int]]:
    # itertools.product varies the last position fastest, so the tuple order
    # is lexicographic with the constant term most significant.
    for low in itertools.product(range(p), repeat=e):
        yield list(low) + [1]


class FiniteField:
    """The field Z_p[x]/(irr)."""

    __slots__ = ("p", "e", "irr", "q", "_exp", "_log", "_gen")

    def __init__(self, p: int, e: int, irr: Sequence[int]):
        self.p = p
        self.e = e
        self.irr = tuple(irr)
        self.q = p**e
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._gen: int | None = None

    # -- identity -------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.irr) == (other.p, other.irr)

    def __hash__(self):
        return hash((self.p, self.irr))

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e}, irr={list(self.irr)})"

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "irr": list(self.irr)}

    @classmethod
    def from_json(cls, d: dict) -> "FiniteField":
        f = make_field(int(d["p"]), int(d["e"]))
        if "irr" in d and tuple(d["irr"]) != f.irr:
            irr = [int(c) for c in d["irr"]]
            if len(irr) != f.e + 1 or irr[-1] != 1 or not is_irreducible(irr, f.p):
                raise FieldMismatch(f"not a monic irreducible of degree {f.e}: {irr}")
            return cls(f.p, f.e, irr)
        return f

    # -- encoding -------------------------------------------------------
    def coeffs(self, v: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.e):
            v, c = divmod(v, self.p)
            out.append(c)
        return tuple(out)

    def from_coeffs(self, cs: Sequence[int]) -> int:
        if len(cs) > self.e:
            raise FieldMismatch(f"{len(cs)} coefficients for degree {self.e}")
        v = 0
        for c in reversed(cs):
            v = v * self.p + (int(c) % self.p)
        return v

    def lex_key(self, v: int) -> tuple[int, ...]:
        return self.coeffs(v)

    def lex_order(self) -> Iterator[int]:
        """All elements in coefficient-lexicographic order (constant term first)."""
        for cs in itertools.product(range(self.p), repeat=self.e):
            yield self.from_coeffs(cs)

    def __call__(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.field != self:
                raise FieldMismatch("element of another field")
            return value
        if isinstance(value, (list, tuple)):
            return FieldElem(self, self.from_coeffs(value))
        return FieldElem(self, self._from_int(int(value)))

    def _from_int(self, n: int) -> int:
        # integers embed through the prime field
        return n % self.p

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    @property
    def generator_s(self) -> "FieldElem":
        """The class of x in Z_p[x]/(irr) (equals 0 for prime fields)."""
        return FieldElem(self, self.p % self.q if self.e > 1 else 0)

    def elements(self) -> list["FieldElem"]:
        return [FieldElem(self, v) for v in self.lex_order()]

    # -- raw integer arithmetic -----------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        out, base = 0, 1
        p = self.p
        while a or b:
            a, ca = divmod(a, p)
            b, cb = divmod(b, p)
            out += ((ca + cb) % p) * base
            base *= p
        return out

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        out, base = 0, 1
        p = self.p
        while a:
            a, ca = divmod(a, p)
            out += ((-ca) % p) * base
            base *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_poly(self, a: int, b: int) -> int:
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        return self.from_coeffs(_poly_mod([c % self.p for c in prod], self.irr, self.p) or [0])

    def _tables(self):
        if self._exp is None:
            g = self.multiplicative_generator_int()
            exp = [0] * (self.q - 1)
            log = [0] * self.q
            x = 1
            for k in range(self.q - 1):
                exp[k] = x
                log[x] = k
                x = self._mul_poly(x, g)
            self._exp, self._log = exp, log
        return self._exp, self._log

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        if self.q <= _LOG_TABLE_LIMIT:
            exp, log = self._tables()
            return exp[(log[a] + log[b]) % (self.q - 1)]
        return self._mul_poly(a, b)

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        if self.e == 1:
            return pow(a, k, self.p)
        if a == 0:
            return 1 if k == 0 else 0
        if self.q <= _LOG_TABLE_LIMIT:
            exp, log = self._tables()
            return exp[(log[a] * k) % (self.q - 1)]
        result = 1
        while k:
            if k & 1:
                result = self._mul_poly(result, a)
            a = self._mul_poly(a, a)
            k >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.e == 1:
            return pow(a, -1, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    # -- structure ------------------------------------------------------
    def multiplicative_order_int(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("zero has no multiplicative order")
        n = self.q - 1
        for r in factorint(n):
            while n % r == 0 and self._pow_slow(a, n // r) == 1:
                n //= r
        return n

    def _pow_slow(self, a: int, k: int) -> int:
        # independent of the log tables, which are built from the generator
        if self.e == 1:
            return pow(a, k, self.p)
        result = 1
        while k:
            if k & 1:
                result = self._mul_poly(result, a)
            a = self._mul_poly(a, a)
            k >>= 1
        return result

    def multiplicative_generator_int(self) -> int:
        """Smallest generator of F_q^* in coefficient-lexicographic order."""
        if self._gen is None:
            n = self.q - 1
            primes = list(factorint(n)) if n > 1 else []
            for v in self.lex_order():
                if v == 0:
                    continue
                if all(self._pow_slow(v, n // r) != 1 for r in primes):
                    self._gen = v
                    break
        return self._gen

    def is_square_int(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self.pow(a, (self.q - 1) // 2) == 1

    def sqrt_int(self, a: int) -> int | None:
        """Smallest (lexicographic) square root of ``a``, or None."""
        if not self.is_square_int(a):
            return None
        for v in self.lex_order():
            if self.mul(v, v) == a:
                return v
        return None  # pragma: no cover - Euler's criterion guarantees a root


class FieldElem:
    """Immutable element of a :class:`FiniteField`."""

    __slots__ = ("field", "v")

    def __init__(self, field: FiniteField, v: int):
        self.field = field
        self.v = v

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.v)

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.v
        if isinstance(other, int):
            return self.field._from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.field, self.field.add(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.field, self.field.sub(self.v, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.field, self.field.sub(o, self.v))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.v))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.field, self.field.mul(self.v, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.field, self.field.div(self.v, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.field, self.field.div(o, self.v))

    def __pow__(self, k: int):
        return FieldElem(self.field, self.field.pow(self.v, k))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.field, self.field.inv(self.v))

    def order(self) -> int:
        return self.field.multiplicative_order_int(self.v)

    def is_zero(self) -> bool:
        return self.v == 0

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.v == other.v
        if isinstance(other, int):
            return self.v == self.field._from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.irr, self.v))

    def __lt__(self, other: "FieldElem"):
        return self.coeffs < other.coeffs

    def __repr__(self):
        if self.field.e == 1:
            return str(self.v)
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("s" if i == 1 else f"s^{i}")
            if i == 0:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) if terms else "0"

    def to_json(self) -> list[int]:
        return list(self.coeffs)


@functools.lru_cache(maxsize=None)
def make_field(p: int, e: int = 1) -> FiniteField:
    """F_{p^e} with the lexicographically smallest monic irreducible modulus."""
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise NonPrime(f"{p} is not prime")
    if not isinstance(e, int) or e < 1:
        raise DegreeOutOfRange(f"extension degree must be >= 1, got {e}")
    if p**e > MAX_ORDER:
        raise OrderTooLarge(f"q = {p}^{e} exceeds 2^20")
    if e == 1:
        return FiniteField(p, 1, (0, 1))
    for poly in _monic_in_lex_order(p, e):
        if is_irreducible(poly, p):
            return FiniteField(p, e, poly)
    raise AssertionError("irreducible polynomials exist in every degree")  # pragma: no cover


def field_of_order(q: int) -> FiniteField:
    from .numbers import prime_power

    p, e = prime_power(q)
    return make_field(p, e)


def field_arith(a: FieldElem, b: FieldElem | int | None, op: str) -> FieldElem:
    """Dispatch form of the arithmetic operators (``pow`` takes an int exponent)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if isinstance(b, FieldElem) and b.field != a.field:
            raise FieldMismatch("operands from different fields")
        return a / b
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    raise ValueError(f"unknown op {op!r}")


def primitive_root_of_unity(f: FiniteField, d: int) -> FieldElem:
    """Element of exact multiplicative order ``d``: the smallest generator of
    F_q^* raised to ``(q-1)/d``."""
    if d < 1 or (f.q - 1) % d:
        raise NotDividing(f"{d} does not divide q-1 = {f.q - 1}")
    g = f.multiplicative_generator_int()
    return FieldElem(f, f.pow(g, (f.q - 1) // d))


def sum_of_two_squares(f: FiniteField) -> tuple[FieldElem, FieldElem]:
    """A pair (a, b) with a^2 + b^2 = -1, for odd q."""
    if f.p == 2:
        raise EvenCharacteristic("-1 = 1 in characteristic 2")
    minus_one = f.neg(1)
    root = f.sqrt_int(minus_one)
    if root is not None:
        return FieldElem(f, root), f.zero
    squares: dict[int, int] = {}
    for v in f.lex_order():
        squares.setdefault(f.mul(v, v), v)
    for a in f.lex_order():
        rest = f.sub(minus_one, f.mul(a, a))
        if rest in squares:
            return FieldElem(f, a), FieldElem(f, squares[rest])
    raise AssertionError(f"no solution of a^2+b^2=-1 in {f}")  # pragma: no cover
