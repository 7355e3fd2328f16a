"""B0 of class-2 groups through the commutator map Lambda^2 A -> C.

For A = F_p^r and C = F_p^s, S is the kernel of lambda and S_Lambda the span
of the decomposable vectors x^y inside S.  B0 has the invariants of S/S_Lambda.
Exterior-square coordinates use the basis e_i^e_j (i < j) in lexicographic
order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import BadParams, TooLarge
from .groups import TABLE_LIMIT, FiniteGroup
from .modular import Subspace, right_kernel

PAIR_BUDGET = 2**16


def wedge_pairs(r: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(r), 2))


@dataclass
class WedgeExtension:
    p: int
    r: int
    s: int
    lam: np.ndarray
    a_labels: list[str] = field(default_factory=list)
    c_labels: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.lam = np.asarray(self.lam, dtype=np.int64).reshape(self.s, self.r * (self.r - 1) // 2) % self.p

    @property
    def dim_wedge(self) -> int:
        return self.r * (self.r - 1) // 2

    def to_json(self) -> dict:
        return {"p": self.p, "r": self.r, "s": self.s, "lambda": self.lam.tolist()}

    @classmethod
    def from_json(cls, d: dict) -> "WedgeExtension":
        try:
            return cls(int(d["p"]), int(d["r"]), int(d["s"]), np.array(d["lambda"], dtype=np.int64))
        except (KeyError, ValueError) as exc:
            raise BadParams(f"bad wedge extension description: {exc}") from exc

    def same_lambda(self, other: "WedgeExtension") -> bool:
        return (self.p, self.r, self.s) == (other.p, other.r, other.s) and bool((self.lam == other.lam).all())


def wedge_vector(x, y, p: int) -> np.ndarray:
    """Coordinates of x^y: entry (i, j) is x_i y_j - x_j y_i."""
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    i, j = np.triu_indices(x.shape[-1], k=1)
    return (x[..., i] * y[..., j] - x[..., j] * y[..., i]) % p


def _wedge_many(x: np.ndarray, Y: np.ndarray, p: int) -> np.ndarray:
    i, j = np.triu_indices(x.shape[0], k=1)
    return (x[i][None, :] * Y[:, j] - x[j][None, :] * Y[:, i]) % p


def s_space(ext: WedgeExtension) -> Subspace:
    D = ext.dim_wedge
    if ext.s == 0 or D == 0:
        return Subspace.full(ext.p, 1, D) if D else Subspace(ext.p, 1, 0)
    return Subspace(ext.p, 1, D, right_kernel(ext.lam, ext.p, 1))


def _all_vectors(p: int, r: int) -> np.ndarray:
    return np.array(list(itertools.product(range(p), repeat=r)), dtype=np.int64).reshape(-1, r)


def _projective_reps(p: int, r: int) -> np.ndarray:
    V = _all_vectors(p, r)
    nz = V.any(axis=1)
    V = V[nz]
    first = V[np.arange(len(V)), (V != 0).argmax(axis=1)]
    return V[first == 1]


def decomposables_in_s(ext: WedgeExtension, order: str = "projective") -> tuple[np.ndarray, list]:
    """Decomposable vectors x^y with lambda(x^y) = 0, plus the (x, y) pairs.

    ``order="projective"``: x over projective representatives, y over a
    transversal of F_p^r / <x>.  ``order="full"``: every pair, reversed scan,
    kept as an independent cross-check.
    """
    p, r = ext.p, ext.r
    if p**r > PAIR_BUDGET:
        raise TooLarge(f"p^r = {p**r} exceeds the pair enumeration budget")
    D = ext.dim_wedge
    allv = _all_vectors(p, r)
    vecs, pairs = [], []
    if order == "projective":
        xs = _projective_reps(p, r)
    elif order == "full":
        xs = allv[::-1]
    else:
        raise ValueError(order)
    for x in xs:
        if order == "projective":
            piv = int(np.flatnonzero(x)[0])
            Y = allv[allv[:, piv] == 0]
        else:
            Y = allv[::-1]
        W = _wedge_many(x, Y, p)
        keep = W.any(axis=1)
        if ext.s:
            keep &= ~((W @ ext.lam.T) % p).any(axis=1)
        if keep.any():
            vecs.append(W[keep])
            pairs.extend((tuple(int(t) for t in x), tuple(int(t) for t in y)) for y in Y[keep])
    if not vecs:
        return np.zeros((0, D), dtype=np.int64), []
    return np.vstack(vecs), pairs


def s_lambda(ext: WedgeExtension, order: str = "projective") -> Subspace:
    D = ext.dim_wedge
    vecs, _ = decomposables_in_s(ext, order)
    return Subspace(ext.p, 1, D).stream(vecs) if D else Subspace(ext.p, 1, 0)


@dataclass
class WedgeResult:
    dim_s: int
    dim_s_lambda: int
    invariants: list[int]
    witnesses: list = field(default_factory=list)

    @property
    def rank(self) -> int:
        return self.dim_s - self.dim_s_lambda

    @property
    def trivial(self) -> bool:
        return self.rank == 0

    def to_json(self) -> dict:
        return {
            "dim_S": self.dim_s,
            "dim_S_lambda": self.dim_s_lambda,
            "rank": self.rank,
            "invariants": self.invariants,
            "witnesses": [[list(x), list(y)] for x, y in self.witnesses],
        }


def b0_class2(ext: WedgeExtension) -> WedgeResult:
    S = s_space(ext)
    D = ext.dim_wedge
    vecs, pairs = decomposables_in_s(ext)
    span = Subspace(ext.p, 1, D)
    witnesses = []
    # greedy independent decomposables, in enumeration order
    for v, pr in zip(vecs, pairs):
        if not span.contains(v):
            span = span + Subspace(ext.p, 1, D, v)
            witnesses.append(pr)
    if not S.contains_space(span):
        raise AssertionError("decomposable span escaped the kernel of lambda")
    rank = S.rank() - span.rank()
    return WedgeResult(S.rank(), span.rank(), [ext.p] * rank, witnesses)


# ---------------------------------------------------------------------------
# the unitriangular 3x3 datum over F_4
# ---------------------------------------------------------------------------

def _f4_coords(alpha: int, beta: int, f) -> list[int]:
    """F_4^2 element (alpha, beta) in the F_2-basis x, y, sx, sy."""
    a, b = f.coeffs(alpha), f.coeffs(beta)
    return [a[0], b[0], a[1], b[1]]


def ut3f4_extension() -> WedgeExtension:
    """A = F_4^2 (the superdiagonal), C = F_4 (the corner), with
    lambda((alpha, beta) ^ (gamma, delta)) = alpha*delta - beta*gamma.

    A-basis x, y, sx, sy; C-basis 1, s.
    """
    from .field import make_field

    f = make_field(2, 2)
    s = f.generator_s.v
    basis = [(1, 0), (0, 1), (s, 0), (0, s)]
    pairs = wedge_pairs(4)
    lam = np.zeros((2, len(pairs)), dtype=np.int64)
    for col, (i, j) in enumerate(pairs):
        (al, be), (ga, de) = basis[i], basis[j]
        c = f.sub(f.mul(al, de), f.mul(be, ga))
        lam[:, col] = f.coeffs(c)
    return WedgeExtension(2, 4, 2, lam, a_labels=["x", "y", "sx", "sy"], c_labels=["1", "s"])


def ut3f4_named_vectors() -> tuple[np.ndarray, np.ndarray]:
    """The four wedge vectors [x,sx], [y,sy], [x+y, s(x+y)], [x+sy, s(x+sy)]
    and the equivalent reduced set, computed with F_4 arithmetic."""
    from .field import make_field

    f = make_field(2, 2)
    s = f.generator_s.v

    def times_s(u):
        return (f.mul(s, u[0]), f.mul(s, u[1]))

    def vec(u):
        return np.array(_f4_coords(u[0], u[1], f))

    x, y = (1, 0), (0, 1)
    sy = times_s(y)
    xy = (f.add(x[0], y[0]), f.add(x[1], y[1]))
    xsy = (f.add(x[0], sy[0]), f.add(x[1], sy[1]))
    named = np.array([wedge_vector(vec(u), vec(times_s(u)), 2) for u in (x, y, xy, xsy)])
    e = np.eye(4, dtype=np.int64)
    X, Y, SX, SY = e
    reduced = np.array([
        wedge_vector(X, SX, 2),
        wedge_vector(Y, SY, 2),
        (wedge_vector(X, SY, 2) + wedge_vector(Y, SX, 2)) % 2,
        (wedge_vector(X, Y, 2) + wedge_vector(X, SY, 2) + wedge_vector(SY, SX, 2)) % 2,
    ])
    return named, reduced


@dataclass
class BasisCheck:
    ok: bool
    rank: int
    dim_s: int
    in_s: bool
    spans_s: bool
    reduced_same_span: bool
    drop_one_ranks: list[int]
    vectors: list

    def to_json(self) -> dict:
        return self.__dict__.copy()


def named_basis_check() -> BasisCheck:
    ext = ut3f4_extension()
    S = s_space(ext)
    named, reduced = ut3f4_named_vectors()
    span = Subspace(2, 1, 6, named)
    in_s = all(S.contains(v) for v in named)
    spans = span == S
    same = Subspace(2, 1, 6, reduced) == span
    drops = [Subspace(2, 1, 6, np.delete(named, k, axis=0)).rank() for k in range(4)]
    ok = span.rank() == 4 and in_s and spans and same and all(d == 3 for d in drops)
    return BasisCheck(ok, span.rank(), S.rank(), in_s, spans, same, drops, named.tolist())


# ---------------------------------------------------------------------------
# realizing a datum as a group
# ---------------------------------------------------------------------------

def group_from_extension(ext: WedgeExtension, max_order: int = TABLE_LIMIT) -> FiniteGroup:
    """Pairs (a, c) with (a,c)(a',c') = (a+a', c+c'+beta(a,a')), beta the
    upper-triangular form with beta(e_i, e_j) = lambda(e_i^e_j) for i < j.

    Index of (a, c) is sum a_i p^i + p^r sum c_j p^j.  For p = 2 the group may
    have exponent 4; only the commutator map is prescribed.
    """
    p, r, s = ext.p, ext.r, ext.s
    n = p ** (r + s)
    if n > max_order:
        raise TooLarge(f"p^(r+s) = {n} exceeds {max_order}")
    idx = np.arange(n)
    digits = (idx[:, None] // p ** np.arange(r + s)) % p
    a, c = digits[:, :r], digits[:, r:]
    wa = p ** np.arange(r)
    wc = p ** np.arange(s)
    pairs = wedge_pairs(r)
    T = np.empty((n, n), dtype=np.int32)
    rows = max(1, 2**22 // max(n, 1))
    for start in range(0, n, rows):
        sl = slice(start, min(n, start + rows))
        A1 = a[sl][:, None, :]
        A2 = a[None, :, :]
        asum = (A1 + A2) % p
        csum = c[sl][:, None, :] + c[None, :, :]
        for col, (i, j) in enumerate(pairs):
            coef = A1[..., i] * A2[..., j]
            if coef.any():
                csum = csum + coef[..., None] * ext.lam[:, col]
        csum %= p
        T[sl] = asum @ wa + p**r * (csum @ wc)
    return FiniteGroup(T, name=f"ext(p={p},r={r},s={s})", check=n <= 64)


# ---------------------------------------------------------------------------
# families of data for exhaustive / random runs
# ---------------------------------------------------------------------------

def all_extensions(p: int, r: int, s: int):
    D = r * (r - 1) // 2
    for flat in itertools.product(range(p), repeat=s * D):
        yield WedgeExtension(p, r, s, np.array(flat, dtype=np.int64).reshape(s, D))


def random_extension(p: int, r: int, s: int, rng: np.random.Generator) -> WedgeExtension:
    D = r * (r - 1) // 2
    return WedgeExtension(p, r, s, rng.integers(0, p, size=(s, D)))


@dataclass
class SearchOutcome:
    p: int
    r: int
    s: int
    seed: int
    tried: int
    found: WedgeExtension | None
    result: WedgeResult | None

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "r": self.r,
            "s": self.s,
            "seed": self.seed,
            "tried": self.tried,
            "found": self.found.to_json() if self.found else None,
            "result": self.result.to_json() if self.result else None,
        }


def search_nontrivial(p: int, r: int, s: int, seed: int, trials: int = 2000) -> SearchOutcome:
    """Seeded random search for a datum with S_Lambda != S."""
    rng = np.random.default_rng(seed)
    for k in range(1, trials + 1):
        ext = random_extension(p, r, s, rng)
        res = b0_class2(ext)
        if not res.trivial:
            return SearchOutcome(p, r, s, seed, k, ext, res)
    return SearchOutcome(p, r, s, seed, trials, None, None)
