"""Square matrices over F_q, SL/PSL bookkeeping and unitriangular groups."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Sequence

from .errors import DimensionMismatch, Singular
from .field import FieldElem, FiniteField, field_of_order, make_field
from .groups import FiniteGroup, closure
from .numbers import prime_power

EXCEPTIONAL_PAIRS = ((2, 4), (2, 9), (3, 2), (3, 4), (4, 2))


class MatrixFq:
    """Immutable n x n matrix; entries stored row-major as raw field ints."""

    __slots__ = ("field", "n", "entries", "_hash")

    def __init__(self, field: FiniteField, n: int, entries: Sequence[int]):
        if len(entries) != n * n:
            raise DimensionMismatch(f"{len(entries)} entries for a {n}x{n} matrix")
        self.field = field
        self.n = n
        self.entries = tuple(int(v) for v in entries)
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def from_rows(cls, field: FiniteField, rows) -> "MatrixFq":
        n = len(rows)
        flat = []
        for row in rows:
            if len(row) != n:
                raise DimensionMismatch("matrix must be square")
            for x in row:
                flat.append(x.v if isinstance(x, FieldElem) else field._from_int(int(x)))
        return cls(field, n, flat)

    @classmethod
    def identity(cls, field: FiniteField, n: int) -> "MatrixFq":
        return cls(field, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def diag(cls, field: FiniteField, values: Sequence) -> "MatrixFq":
        n = len(values)
        vals = [v.v if isinstance(v, FieldElem) else int(v) for v in values]
        return cls(field, n, [vals[i] if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def scalar(cls, field: FiniteField, n: int, c) -> "MatrixFq":
        return cls.diag(field, [c] * n)

    @classmethod
    def permutation(cls, field: FiniteField, perm: Sequence[int]) -> "MatrixFq":
        """Monomial matrix with a 1 in position (i, perm[i])."""
        n = len(perm)
        ent = [0] * (n * n)
        for i, j in enumerate(perm):
            ent[i * n + j] = 1
        return cls(field, n, ent)

    @classmethod
    def elementary(cls, field: FiniteField, n: int, i: int, j: int, c=1) -> "MatrixFq":
        """I + c E_{i,j} (0-based indices)."""
        ent = list(cls.identity(field, n).entries)
        ent[i * n + j] = c.v if isinstance(c, FieldElem) else int(c)
        return cls(field, n, ent)

    def identity_like(self) -> "MatrixFq":
        return MatrixFq.identity(self.field, self.n)

    # -- access ---------------------------------------------------------
    def __getitem__(self, ij) -> FieldElem:
        i, j = ij
        return FieldElem(self.field, self.entries[i * self.n + j])

    def rows(self) -> list[list[FieldElem]]:
        n = self.n
        return [[FieldElem(self.field, self.entries[i * n + j]) for j in range(n)] for i in range(n)]

    def __eq__(self, other):
        return isinstance(other, MatrixFq) and self.field == other.field and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.entries))
        return self._hash

    def __repr__(self):
        return "MatrixFq(" + repr([[repr(x) for x in row] for row in self.rows()]) + ")"

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: "MatrixFq"):
        if not isinstance(other, MatrixFq) or other.n != self.n:
            raise DimensionMismatch("matrix dimensions differ")
        if other.field != self.field:
            raise DimensionMismatch("matrices over different fields")

    def __mul__(self, other):
        if isinstance(other, FieldElem):
            return MatrixFq(self.field, self.n, [self.field.mul(x, other.v) for x in self.entries])
        self._check(other)
        n, F = self.n, self.field
        a, b = self.entries, other.entries
        out = [0] * (n * n)
        if F.e == 1:
            p = F.p
            for i in range(n):
                row = a[i * n:(i + 1) * n]
                for j in range(n):
                    out[i * n + j] = sum(row[k] * b[k * n + j] for k in range(n)) % p
        else:
            for i in range(n):
                for j in range(n):
                    acc = 0
                    for k in range(n):
                        x, y = a[i * n + k], b[k * n + j]
                        if x and y:
                            acc = F.add(acc, F.mul(x, y))
                    out[i * n + j] = acc
        return MatrixFq(F, n, out)

    def det(self) -> FieldElem:
        """Determinant by Gaussian elimination over the field."""
        F, n = self.field, self.n
        m = [list(self.entries[i * n:(i + 1) * n]) for i in range(n)]
        d = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c]), None)
            if piv is None:
                return F.zero
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                d = F.neg(d)
            d = F.mul(d, m[c][c])
            inv = F.inv(m[c][c])
            for r in range(c + 1, n):
                if m[r][c]:
                    f = F.mul(m[r][c], inv)
                    m[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[r], m[c])]
        return FieldElem(F, d)

    def inverse(self) -> "MatrixFq":
        F, n = self.field, self.n
        m = [list(self.entries[i * n:(i + 1) * n]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c]), None)
            if piv is None:
                raise Singular("matrix is singular")
            m[c], m[piv] = m[piv], m[c]
            inv = F.inv(m[c][c])
            m[c] = [F.mul(inv, x) for x in m[c]]
            for r in range(n):
                if r != c and m[r][c]:
                    f = m[r][c]
                    m[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[r], m[c])]
        return MatrixFq(F, n, [x for row in m for x in row[n:]])

    def __pow__(self, k: int) -> "MatrixFq":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = self.identity_like()
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_scalar(self) -> bool:
        n, e = self.n, self.entries
        c = e[0]
        return all(e[i * n + j] == (c if i == j else 0) for i in range(n) for j in range(n))

    def projective_canonical(self) -> "MatrixFq":
        """Canonical representative of the scalar class of A inside SL.

        Among the multiples lambda*A with det 1, the one whose first nonzero
        entry has the smallest integer encoding (so 1 wins when it is
        available, and the identity is its own representative).  When no multiple
        has det 1 (A outside scalars*SL), the first nonzero entry is scaled to 1.
        """
        F, n = self.field, self.n
        det = self.det().v
        if det == 0:
            raise Singular("projective class of a singular matrix")
        lead = next(x for x in self.entries if x)
        cands = _scalars_with_power(F, n, F.inv(det))
        if not cands:
            return self * FieldElem(F, F.inv(lead))
        lam = min(cands, key=lambda c: F.mul(c, lead))
        if lam == 1:
            return self
        return self * FieldElem(F, lam)

    # -- serialization --------------------------------------------------
    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "n": self.n,
            "entries": [[list(x.coeffs) for x in row] for row in self.rows()],
        }

    @classmethod
    def from_json(cls, d: dict) -> "MatrixFq":
        F = FiniteField.from_json(d["field"])
        n = int(d["n"])
        flat = [F.from_coeffs(c) for row in d["entries"] for c in row]
        return cls(F, n, flat)


def _scalars_with_power(F: FiniteField, n: int, c: int) -> list[int]:
    """All lambda in F^* with lambda^n = c."""
    exp, log = F._tables()
    m = F.q - 1
    k = log[c]
    g = math.gcd(n, m)
    if k % g:
        return []
    step = m // g
    j0 = (k // g) * pow(n // g, -1, step) % step if step > 1 else 0
    return sorted(exp[(j0 + t * step) % m] for t in range(g))


def mat_arith(A: MatrixFq, B: MatrixFq | int | None, op: str):
    """Dispatch form: mul, inv, det, pow (B is the exponent for pow)."""
    if op == "mul":
        return A * B
    if op == "inv":
        return A.inverse()
    if op == "det":
        return A.det()
    if op == "pow":
        return A ** int(B)
    raise ValueError(f"unknown op {op!r}")


def projective_canonical(A: MatrixFq) -> MatrixFq:
    return A.projective_canonical()


# ---------------------------------------------------------------------------
# PSL parameters and groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PslParams:
    n: int
    q: int
    d: int
    order: int
    exceptional: bool

    def to_json(self) -> dict:
        return asdict(self)


def psl_params(n: int, q: int) -> PslParams:
    prime_power(q)
    if n < 2:
        raise ValueError("n must be at least 2")
    d = math.gcd(n, q - 1)
    order = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        order *= q**i - 1
    return PslParams(n, q, d, order // d, (n, q) in EXCEPTIONAL_PAIRS)


def sl_generators(n: int, f: FiniteField) -> list[MatrixFq]:
    """Elementary transvections I + c E_{i,j}, c running over the
    polynomial basis 1, s, ..., s^(e-1)."""
    gens = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for k in range(f.e):
                gens.append(MatrixFq.elementary(f, n, i, j, f.p**k))
    return gens


def special_linear_group(n: int, q: int, max_order: int = 4096) -> FiniteGroup:
    f = field_of_order(q)
    return closure(sl_generators(n, f), max_order, name=f"SL({n},{q})")


def projective_special_linear_group(n: int, q: int, max_order: int = 4096) -> FiniteGroup:
    f = field_of_order(q)
    return closure(sl_generators(n, f), max_order, projective=True, name=f"PSL({n},{q})")


def unitriangular_label(A: MatrixFq) -> str:
    n = A.n
    terms = []
    for i in range(n):
        for j in range(i + 1, n):
            x = A[i, j]
            if x.is_zero():
                continue
            coef = "" if x.v == 1 else (f"({x!r})" if "+" in repr(x) else repr(x))
            terms.append(f"{coef}a_{{{i + 1},{j + 1}}}")
    return "+".join(terms) if terms else "1"


def unitriangular_group(f: FiniteField, n: int, max_order: int = 4096) -> FiniteGroup:
    """Upper unitriangular n x n matrices over f; elements labelled by their
    strictly-upper entries, e.g. ``a_{1,3}`` or ``s a_{1,2}+a_{2,3}``."""
    if n < 2 or n > 4:
        raise DimensionMismatch("unitriangular groups are provided for n in 2..4")
    gens = [MatrixFq.elementary(f, n, i, i + 1, f.p**k) for i in range(n - 1) for k in range(f.e)]
    return closure(gens, max_order, labeler=unitriangular_label, name=f"UT({n},{f.q})")


def field_for(q: int) -> FiniteField:
    p, e = prime_power(q)
    return make_field(p, e)
