"""Linear algebra over the chain ring Z_{p^a}.

Submodules of Z_{p^a}^N are kept in Howell normal form: echelon rows whose
pivots are powers of p, entries above a pivot reduced below it, and closed
under the annihilator rows ``p^(a-k) * row``.  With that closure a single
top-down reduction pass decides membership, and two generating sets span the
same module exactly when their Howell forms coincide.

``GF2Basis`` is the packed p = 2, a = 1 special case used when equations are
streamed one at a time.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

DTYPE = np.int64


def _valuations(x: np.ndarray, p: int, a: int) -> np.ndarray:
    """p-adic valuation of each entry of x (entries in [0, p^a)); zero -> a."""
    v = np.zeros(x.shape, dtype=np.int64)
    pk = 1
    for _ in range(a):
        pk *= p
        v += (x % pk == 0)
    return v


def howell_form(M, p: int, a: int) -> tuple[np.ndarray, list[int], list[int]]:
    """Howell normal form of the row span of ``M`` over Z_{p^a}.

    Returns (rows, pivot_columns, pivot_valuations).
    """
    m = p**a
    A = np.asarray(M, dtype=DTYPE)
    if A.ndim == 1:
        A = A[None, :]
    ncols = A.shape[1]
    A = A % m
    A = A[A.any(axis=1)]
    piv_cols: list[int] = []
    piv_vals: list[int] = []
    r = 0
    c = 0
    while r < A.shape[0]:
        while c < ncols and not A[r:, c].any():
            c += 1
        if c == ncols:
            A = A[:r]
            break
        col = A[r:, c]
        vals = _valuations(col, p, a)
        i = int(np.argmin(vals))
        k = int(vals[i])
        if i:
            A[[r, r + i]] = A[[r + i, r]]
        unit = int(A[r, c]) // p**k
        if unit != 1:
            A[r] = (A[r] * pow(unit, -1, m)) % m
        pk = p**k
        below = A[r + 1:, c]
        hit = np.flatnonzero(below)
        if hit.size:
            f = below[hit] // pk
            A[r + 1 + hit] = (A[r + 1 + hit] - f[:, None] * A[r]) % m
        if k > 0:
            extra = (A[r] * p ** (a - k)) % m
            if extra.any():
                A = np.vstack([A, extra[None, :]])
        piv_cols.append(c)
        piv_vals.append(k)
        r += 1
        c += 1
        tail = A[r:]
        keep = tail.any(axis=1)
        if not keep.all():
            A = np.vstack([A[:r], tail[keep]])
    A = A[:r] if A.shape[0] > r else A
    # reduce entries above each pivot into [0, p^k)
    for t, (c, k) in enumerate(zip(piv_cols, piv_vals)):
        if t == 0:
            continue
        pk = p**k
        above = A[:t, c]
        f = above // pk
        hit = np.flatnonzero(f)
        if hit.size:
            A[hit] = (A[hit] - f[hit, None] * A[t]) % m
    if A.shape[0] == 0:
        A = np.zeros((0, ncols), dtype=DTYPE)
    return A, piv_cols, piv_vals


class Subspace:
    """A submodule of Z_{p^a}^N held in Howell normal form."""

    __slots__ = ("p", "a", "N", "rows", "pivots", "pivot_vals")

    def __init__(self, p: int, a: int, N: int, generators=None, *, _howell=None):
        self.p, self.a, self.N = p, a, N
        if _howell is not None:
            self.rows, self.pivots, self.pivot_vals = _howell
            return
        if generators is None or len(generators) == 0:
            self.rows = np.zeros((0, N), dtype=DTYPE)
            self.pivots, self.pivot_vals = [], []
            return
        G = np.asarray(generators, dtype=DTYPE)
        if G.ndim == 1:
            G = G[None, :]
        if G.shape[1] != N:
            raise ValueError(f"generators have {G.shape[1]} columns, expected {N}")
        self.rows, self.pivots, self.pivot_vals = howell_form(G, p, a)

    @property
    def modulus(self) -> int:
        return self.p**self.a

    @classmethod
    def zero(cls, p, a, N) -> "Subspace":
        return cls(p, a, N)

    @classmethod
    def full(cls, p, a, N) -> "Subspace":
        return cls(p, a, N, np.eye(N, dtype=DTYPE))

    def __len__(self):
        return self.rows.shape[0]

    def log_order(self) -> int:
        """log_p of the number of elements."""
        return int(sum(self.a - k for k in self.pivot_vals))

    def order(self) -> int:
        return self.p ** self.log_order()

    def rank(self) -> int:
        """Number of pivot rows; equals the F_p-dimension when a = 1."""
        return len(self.pivots)

    def reduce(self, v) -> np.ndarray:
        """Remainder of v after one pass against the Howell rows."""
        m = self.modulus
        v = np.asarray(v, dtype=DTYPE) % m
        for t, (c, k) in enumerate(zip(self.pivots, self.pivot_vals)):
            x = int(v[c])
            if x:
                pk = self.p**k
                if x % pk:
                    return v
                v = (v - (x // pk) * self.rows[t]) % m
        return v

    def reduce_block(self, B: np.ndarray) -> np.ndarray:
        """Subtract multiples of the Howell rows from every row of B.

        Rows that are not members keep a nonzero remainder; the span of
        (self, B) is unchanged.
        """
        m = self.modulus
        B = np.asarray(B, dtype=DTYPE) % m
        for t, (c, k) in enumerate(zip(self.pivots, self.pivot_vals)):
            f = B[:, c] // self.p**k
            hit = np.flatnonzero(f)
            if hit.size:
                B[hit] = (B[hit] - f[hit, None] * self.rows[t]) % m
        return B

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def contains_space(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(r) for r in other.rows)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.p, self.a, self.N, np.vstack([self.rows, other.rows]))

    def scaled(self, c: int) -> "Subspace":
        return Subspace(self.p, self.a, self.N, self.rows * c)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and (self.p, self.a, self.N) == (other.p, other.a, other.N)
            and self.rows.shape == other.rows.shape
            and bool((self.rows == other.rows).all())
        )

    def _check(self, other: "Subspace"):
        if (self.p, self.a, self.N) != (other.p, other.a, other.N):
            raise ValueError("subspaces live in different ambient modules")

    def __repr__(self):
        return f"Subspace(Z_{self.p}^{self.a}, N={self.N}, log_order={self.log_order()}, rows={len(self)})"

    def stream(self, rows: np.ndarray, chunk: int = 2048) -> "Subspace":
        """Merge more generators in chunks; the full stack is never formed."""
        cur = self
        rows = np.asarray(rows, dtype=DTYPE) % self.modulus
        for start in range(0, rows.shape[0], chunk):
            block = rows[start:start + chunk]
            block = block[block.any(axis=1)]
            if block.shape[0] == 0:
                continue
            block = cur.reduce_block(block)
            block = block[block.any(axis=1)]
            if block.shape[0] == 0:
                continue
            block = np.unique(block, axis=0)
            cur = Subspace(self.p, self.a, self.N, np.vstack([cur.rows, block]))
        return cur


def left_kernel(M, p: int, a: int) -> np.ndarray:
    """Generators of {c : c @ M = 0 (mod p^a)}."""
    M = np.asarray(M, dtype=DTYPE)
    R, C = M.shape
    if R == 0:
        return np.zeros((0, 0), dtype=DTYPE)
    aug = np.hstack([M % p**a, np.eye(R, dtype=DTYPE)])
    H, _, _ = howell_form(aug, p, a)
    ker = H[~H[:, :C].any(axis=1), C:]
    return ker


def right_kernel(M, p: int, a: int) -> np.ndarray:
    """Generators of {v : M @ v = 0 (mod p^a)}."""
    M = np.asarray(M, dtype=DTYPE)
    return left_kernel(M.T, p, a)


def quotient_invariants(top: Subspace, bottom: Subspace) -> list[int]:
    """Elementary divisors of the finite abelian p-group top/bottom.

    Counts the layers |p^j Q| = |p^j top + bottom| / |bottom|: the number of
    cyclic factors of order > p^j is log_p(|p^j Q| / |p^(j+1) Q|).
    """
    if not top.contains_space(bottom):
        raise ValueError("bottom is not contained in top")
    p, a = top.p, top.a
    base = bottom.log_order()
    layer = [top.log_order() - base]
    for j in range(1, a + 1):
        layer.append((top.scaled(p**j) + bottom).log_order() - base)
    invariants: list[int] = []
    for j in range(a):
        # factors of order exactly p^(j+1)
        at_least = layer[j] - layer[j + 1]
        at_least_next = (layer[j + 1] - layer[j + 2]) if j + 2 <= a else 0
        invariants.extend([p ** (j + 1)] * (at_least - at_least_next))
    return sorted(invariants)


class GF2Basis:
    """Reduced echelon basis over GF(2); each row is an int bitset.

    Bit i of a row is variable i, so 64 variables share each machine word
    inside CPython's integer representation.
    """

    __slots__ = ("N", "rows")

    def __init__(self, N: int):
        self.N = N
        self.rows: dict[int, int] = {}  # pivot bit -> row (pivot = lowest set bit)

    def reduce(self, v: int) -> int:
        while v:
            low = v & -v
            row = self.rows.get(low.bit_length() - 1)
            if row is None:
                return v
            v ^= row
        return 0

    def insert(self, v: int) -> bool:
        # clear every pivot bit, not just the leading ones, so that each
        # pivot occurs in exactly one row
        for piv, row in self.rows.items():
            if (v >> piv) & 1:
                v ^= row
        if not v:
            return False
        piv = (v & -v).bit_length() - 1
        # keep fully reduced: clear this pivot from existing rows
        for k, row in self.rows.items():
            if (row >> piv) & 1:
                self.rows[k] = row ^ v
        self.rows[piv] = v
        return True

    def extend(self, vs: Iterable[int]) -> None:
        for v in vs:
            self.insert(v)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def kernel_basis(self) -> list[int]:
        """Basis of {x : <row, x> = 0 for every row} as bitsets."""
        pivots = set(self.rows)
        out = []
        for free in range(self.N):
            if free in pivots:
                continue
            x = 1 << free
            for piv, row in self.rows.items():
                if (row >> free) & 1:
                    x |= 1 << piv
            out.append(x)
        return out

    def to_array(self) -> np.ndarray:
        return bits_to_array(list(self.rows.values()), self.N)


def bits_to_array(vs: list[int], N: int) -> np.ndarray:
    out = np.zeros((len(vs), N), dtype=DTYPE)
    for i, v in enumerate(vs):
        while v:
            low = v & -v
            out[i, low.bit_length() - 1] = 1
            v ^= low
    return out


def array_to_bits(row) -> int:
    v = 0
    for i in np.flatnonzero(np.asarray(row) % 2):
        v |= 1 << int(i)
    return v
