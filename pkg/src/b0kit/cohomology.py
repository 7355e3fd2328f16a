"""Brute-force B0(G)_(p) from normalized 2-cocycles over Z_{p^a}.

Cocycles are vectors indexed by ordered pairs (x, y) of non-identity
elements, position (x-1)(n-1) + (y-1).  The p-part of H^2(G, Q/Z) is
realized as Z^2(G, Z_{p^a}) modulo coboundaries and carry classes (the
Bockstein images of characters G -> Z_{p^a}); B0 is the part whose cocycles
are symmetric on every commuting pair.

Z^2 is found by a gauge-reduced solve: after fixing f(h, s) = 0 on the edges
of a breadth-first spanning tree, a cocycle is determined by its values
f(x, s) on the remaining edges (s a generator), and the cocycle identity
only needs checking for z = s.  A direct solve over all (n-1)^2 variables is
kept for small groups as an independent cross-check.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import NotASubgroup, TooLarge
from .groups import FiniteGroup, Subgroup, abelianization, characters, commuting_pairs, coordinates, greedy_basis
from .modular import GF2Basis, Subspace, array_to_bits, bits_to_array, left_kernel, quotient_invariants, right_kernel
from .numbers import valuation

MAX_ORDER_P2 = 128
MAX_ORDER_ODD = 96
DIRECT_LIMIT = 16
DIRECT_LIMIT_GF2 = 32
CHUNK_ROWS = 4096


def default_budget(p: int) -> int:
    return MAX_ORDER_P2 if p == 2 else MAX_ORDER_ODD


def check_budget(G: FiniteGroup, p: int, cap: int | None = None) -> None:
    cap = default_budget(p) if cap is None else cap
    if G.n > cap:
        raise TooLarge(f"|G| = {G.n} exceeds the cocycle budget {cap} for p = {p}")
    if G.table is None:
        raise TooLarge("cocycle computations need a materialized table")


@dataclass(frozen=True)
class CocycleIndexing:
    n: int

    @property
    def N(self) -> int:
        return (self.n - 1) ** 2

    def position(self, x: int, y: int) -> int:
        return (x - 1) * (self.n - 1) + (y - 1)

    def pair(self, pos: int) -> tuple[int, int]:
        x, y = divmod(pos, self.n - 1)
        return x + 1, y + 1

    def to_vector(self, f: np.ndarray) -> np.ndarray:
        """(n, n) cocycle table -> vector (rows/columns of the identity dropped)."""
        return np.ascontiguousarray(f[..., 1:, 1:]).reshape(*f.shape[:-2], self.N)

    def to_table(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v)
        out = np.zeros(v.shape[:-1] + (self.n, self.n), dtype=np.int64)
        out[..., 1:, 1:] = v.reshape(*v.shape[:-1], self.n - 1, self.n - 1)
        return out


def _require_identity_zero(G: FiniteGroup) -> None:
    if G.identity != 0:
        raise ValueError("cocycle indexing expects the identity at index 0")


# ---------------------------------------------------------------------------
# coboundaries, carries, commuting-pair antisymmetry
# ---------------------------------------------------------------------------

def coboundary_generators(G: FiniteGroup, m: int) -> np.ndarray:
    """delta(e_g) for every non-identity g, as cocycle tables (n-1, n, n)."""
    n = G.n
    g = np.arange(1, n)[:, None, None]
    x = np.arange(n)[None, :, None]
    y = np.arange(n)[None, None, :]
    T = G.table[None, :, :]
    out = (x == g).astype(np.int64) + (y == g) - (T == g)
    out[:, 0, :] = 0
    out[:, :, 0] = 0
    return out % m


def hom_to_cyclic(G: FiniteGroup, m: int) -> list[np.ndarray]:
    """All homomorphisms G -> Z_m, as value arrays."""
    e, chars = characters(G)
    out = []
    for chi in chars:
        if ((chi * m) % e).any():
            continue
        out.append((chi * m // e) % m)
    return out


def carry_tables(G: FiniteGroup, m: int) -> np.ndarray:
    """c_chi(x, y) = (chi(x) + chi(y) - chi(xy)) / m with chi lifted to [0, m)."""
    homs = [h for h in hom_to_cyclic(G, m) if h.any()]
    if not homs:
        return np.zeros((0, G.n, G.n), dtype=np.int64)
    H = np.stack(homs)
    c = H[:, :, None] + H[:, None, :] - H[:, G.table]
    assert not (c % m).any()
    return c // m


def phi_matrix(G: FiniteGroup, pairs: list[tuple[int, int]]) -> tuple[np.ndarray, np.ndarray]:
    xs = np.array([x for x, _ in pairs], dtype=np.int64)
    ys = np.array([y for _, y in pairs], dtype=np.int64)
    return xs, ys


def phi(tables: np.ndarray, xs: np.ndarray, ys: np.ndarray, m: int) -> np.ndarray:
    """f(x, y) - f(y, x) on the listed commuting pairs."""
    return (tables[..., xs, ys] - tables[..., ys, xs]) % m


# ---------------------------------------------------------------------------
# cocycle solves
# ---------------------------------------------------------------------------

def spanning_tree(G: FiniteGroup, gens: list[int]):
    """Breadth-first tree by right multiplication: parent[y] = (h, k) with
    y = h * gens[k].  Returns (order, parent)."""
    parent: dict[int, tuple[int, int] | None] = {G.identity: None}
    order = [G.identity]
    head = 0
    while head < len(order):
        h = order[head]
        head += 1
        for k, s in enumerate(gens):
            y = int(G.table[h, s])
            if y not in parent:
                parent[y] = (h, k)
                order.append(y)
    if len(order) != G.n:
        raise ValueError("generators do not generate the group")
    return order, parent


def _gauge_forms(G: FiniteGroup, gens: list[int]):
    """Linear forms F[x, y] (length U) for gauge-fixed cocycles."""
    n, T = G.n, G.table
    order, parent = spanning_tree(G, gens)
    tree = {(h, k) for y, pk in parent.items() if pk is not None for (h, k) in [pk] if h != G.identity}
    unknowns = [(x, k) for k in range(len(gens)) for x in range(1, n) if (x, k) not in tree]
    U = len(unknowns)
    Fs = np.zeros((len(gens), n, U), dtype=np.int64)
    for u, (x, k) in enumerate(unknowns):
        Fs[k, x, u] = 1
    F = np.zeros((n, n, U), dtype=np.int64)
    for k, s in enumerate(gens):
        F[:, s] = Fs[k]
    for y in order[1:]:
        h, k = parent[y]
        if h == G.identity:
            continue
        # f(x, h s) = f(x, h) + f(x h, s) - f(h, s)
        F[:, y] = F[:, h] + Fs[k][T[:, h]] - Fs[k][h]
    return F, Fs, U


def _gauge_equations(G: FiniteGroup, F: np.ndarray, Fs: np.ndarray, gens: list[int], k: int, m: int) -> np.ndarray:
    """Rows D(x, y, s) = F[x,y] + F[xy,s] - F[y,s] - F[x,ys] for s = gens[k]."""
    T = G.table
    s = gens[k]
    E = F + Fs[k][T] - Fs[k][None, :, :] - F[:, T[:, s]]
    E = E.reshape(-1, F.shape[2]) % m
    E = E[E.any(axis=1)]
    if E.shape[0]:
        E = np.unique(E, axis=0)
    return E


def _solve_kernel(row_blocks, U: int, p: int, a: int) -> np.ndarray:
    """Right kernel of the stacked rows, checking each block against the
    current kernel with one matrix product and only eliminating violators."""
    m = p**a
    basis = Subspace(p, a, U)
    kernel = np.eye(U, dtype=np.int64)
    for block in row_blocks:
        for start in range(0, block.shape[0], CHUNK_ROWS):
            chunk = block[start:start + CHUNK_ROWS]
            if kernel.shape[0] == 0:
                return kernel
            bad = ((chunk @ kernel.T) % m).any(axis=1)
            if not bad.any():
                continue
            basis = basis.stream(chunk[bad])
            kernel = right_kernel(basis.rows, p, a) if len(basis) else np.eye(U, dtype=np.int64)
            kernel = Subspace(p, a, U, kernel).rows
    return kernel


@dataclass
class GaugeSolution:
    gens: list[int]
    unknowns: int
    equations: int
    solutions: np.ndarray  # (d, n, n) cocycle tables


def gauge_cocycles(G: FiniteGroup, p: int, a: int, threads: int = 1) -> GaugeSolution:
    _require_identity_zero(G)
    m = p**a
    gens = list(G.generators)
    if not gens:
        return GaugeSolution([], 0, 0, np.zeros((0, G.n, G.n), dtype=np.int64))
    F, Fs, U = _gauge_forms(G, gens)
    if U == 0:
        return GaugeSolution(gens, 0, 0, np.zeros((0, G.n, G.n), dtype=np.int64))
    ks = range(len(gens))
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            blocks = list(pool.map(lambda k: _gauge_equations(G, F, Fs, gens, k, m), ks))
    else:
        blocks = [_gauge_equations(G, F, Fs, gens, k, m) for k in ks]
    kernel = _solve_kernel(blocks, U, p, a)
    sols = np.einsum("xyu,du->dxy", F, kernel) % m if kernel.shape[0] else np.zeros((0, G.n, G.n), dtype=np.int64)
    return GaugeSolution(gens, U, int(sum(b.shape[0] for b in blocks)), sols)


def direct_cocycle_space(G: FiniteGroup, p: int, a: int) -> Subspace:
    """All (n-1)^2 variables, every triple of non-identity elements."""
    _require_identity_zero(G)
    n = G.n
    idx = CocycleIndexing(n)
    m = p**a
    limit = DIRECT_LIMIT_GF2 if (p, a) == (2, 1) else DIRECT_LIMIT
    if n > limit:
        raise TooLarge(f"direct cocycle solve is limited to |G| <= {limit}")
    N = idx.N
    if N == 0:
        return Subspace(p, a, 0)
    T = G.table
    rows = []
    for x in range(1, n):
        for y in range(1, n):
            xy = int(T[x, y])
            for z in range(1, n):
                yz = int(T[y, z])
                r = np.zeros(N, dtype=np.int64)
                r[idx.position(x, y)] += 1
                if xy:
                    r[idx.position(xy, z)] += 1
                r[idx.position(y, z)] -= 1
                if yz:
                    r[idx.position(x, yz)] -= 1
                rows.append(r % m)
    E = np.array(rows)
    E = E[E.any(axis=1)]
    if (p, a) == (2, 1):
        basis = GF2Basis(N)
        basis.extend(array_to_bits(r) for r in E)
        ker = bits_to_array(basis.kernel_basis(), N)
    else:
        eq = Subspace(p, a, N).stream(E)
        ker = right_kernel(eq.rows, p, a) if len(eq) else np.eye(N, dtype=np.int64)
    return Subspace(p, a, N, ker)


# ---------------------------------------------------------------------------
# the full computation, cached per (G, p, a)
# ---------------------------------------------------------------------------

class CocycleData:
    """Z^2, B^2, carry span, K = ker(Phi) on Z^2 for one (G, p, a).

    All quotient arithmetic happens after projecting onto the Howell pivot
    columns of Z^2, which is injective on Z^2 and far smaller than (n-1)^2.
    """

    def __init__(self, G: FiniteGroup, p: int, a: int, threads: int = 1, max_order: int | None = None):
        check_budget(G, p, max_order)
        _require_identity_zero(G)
        t0 = time.perf_counter()
        self.G, self.p, self.a, self.m = G, p, a, p**a
        self.idx = CocycleIndexing(G.n)
        m = self.m
        self.pairs = commuting_pairs(G)
        self.xs, self.ys = phi_matrix(G, self.pairs)
        self.b2_tables = coboundary_generators(G, m)
        self.carry = carry_tables(G, m) % m
        self.solution = gauge_cocycles(G, p, a, threads)
        sols = self.solution.solutions
        N = self.idx.N
        full = np.vstack([self.idx.to_vector(self.b2_tables), self.idx.to_vector(sols)]) if N else np.zeros((0, 0))
        self.Z2_full = Subspace(p, a, N, full)
        self.cols = np.asarray(self.Z2_full.pivots, dtype=np.int64)
        # checks that guard the finite-coefficient realization
        self.checks: dict[str, bool] = {}
        self.checks["coboundaries_symmetric_on_commuting_pairs"] = not phi(self.b2_tables, self.xs, self.ys, m).any()
        self.checks["carry_symmetric"] = bool((self.carry == np.swapaxes(self.carry, 1, 2)).all())
        carry_vecs = self.idx.to_vector(self.carry) if len(self.carry) else np.zeros((0, N), dtype=np.int64)
        self.checks["carry_are_cocycles"] = all(self.Z2_full.contains(v) for v in carry_vecs)
        for name, ok in self.checks.items():
            if not ok:
                raise AssertionError(f"cocycle self-check failed: {name}")
        P = self.project
        self.B2 = Subspace(p, a, len(self.cols), P(self.idx.to_vector(self.b2_tables)))
        self.Z2 = Subspace(p, a, len(self.cols), self.Z2_full.rows[:, self.cols])
        self.carry_span = Subspace(p, a, len(self.cols), P(carry_vecs))
        self.D = self.B2 + self.carry_span
        ph = phi(sols, self.xs, self.ys, m) if len(sols) else np.zeros((0, len(self.pairs)), dtype=np.int64)
        combos = left_kernel(ph, p, a) if len(sols) else np.zeros((0, 0), dtype=np.int64)
        sym = (combos @ P(self.idx.to_vector(sols))) % m if len(combos) else np.zeros((0, len(self.cols)), dtype=np.int64)
        self.K = self.B2 + Subspace(p, a, len(self.cols), sym)
        self.checks["denominator_inside_kernel"] = self.K.contains_space(self.D)
        if not self.checks["denominator_inside_kernel"]:
            raise AssertionError("B^2 + carry is not inside ker(Phi)")
        self.seconds = time.perf_counter() - t0

    def project(self, vecs: np.ndarray) -> np.ndarray:
        vecs = np.asarray(vecs, dtype=np.int64) % self.m
        return vecs[..., self.cols]

    def table_to_coords(self, f: np.ndarray) -> np.ndarray:
        return self.project(self.idx.to_vector(np.asarray(f)))

    def is_cocycle(self, f: np.ndarray) -> bool:
        return self.Z2_full.contains(self.idx.to_vector(np.asarray(f) % self.m))

    def in_denominator(self, f: np.ndarray) -> bool:
        """True when the cocycle table f is a coboundary plus carry classes."""
        if not self.is_cocycle(f):
            raise ValueError("not a cocycle")
        return self.D.contains(self.table_to_coords(f))

    def expand(self, coords: np.ndarray) -> np.ndarray:
        """Inverse of the projection on Z^2: the full cocycle table."""
        v = np.asarray(coords, dtype=np.int64) % self.m
        out = np.zeros(self.idx.N, dtype=np.int64)
        rows = self.Z2_full.rows
        for t, (c, k) in enumerate(zip(self.Z2_full.pivots, self.Z2_full.pivot_vals)):
            cur = (v[t] - out[c]) % self.m
            if cur:
                out = (out + (cur // self.p**k) * rows[t]) % self.m
        return self.idx.to_table(out)

    def invariants(self) -> list[int]:
        return quotient_invariants(self.K, self.D)


_CACHE: dict = {}


def cocycle_data(G: FiniteGroup, p: int, a: int, threads: int = 1, max_order: int | None = None) -> CocycleData:
    key = (id(G), p, a)
    hit = _CACHE.get(key)
    if hit is not None and hit[0] is G:
        return hit[1]
    data = CocycleData(G, p, a, threads, max_order)
    if len(_CACHE) > 32:
        _CACHE.clear()
    _CACHE[key] = (G, data)
    return data


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def cocycle_space(G: FiniteGroup, p: int, a: int) -> Subspace:
    return cocycle_data(G, p, a).Z2_full


def coboundary_space(G: FiniteGroup, p: int, a: int) -> Subspace:
    check_budget(G, p)
    N = CocycleIndexing(G.n).N
    if G.n == 1:
        return Subspace(p, a, 0)
    return Subspace(p, a, N, CocycleIndexing(G.n).to_vector(coboundary_generators(G, p**a)))


def carry_classes(G: FiniteGroup, p: int, a: int) -> Subspace:
    check_budget(G, p)
    idx = CocycleIndexing(G.n)
    c = carry_tables(G, p**a)
    return Subspace(p, a, idx.N, idx.to_vector(c) if len(c) else None)


def b0_kernel(G: FiniteGroup, p: int, a: int) -> Subspace:
    """Cocycles symmetric on every commuting pair, in full coordinates."""
    data = cocycle_data(G, p, a)
    full = np.array([data.idx.to_vector(data.expand(r)) for r in data.K.rows]).reshape(-1, data.idx.N)
    return Subspace(p, a, data.idx.N, full)


JUSTIFICATION = [
    "a class restricts trivially to an abelian subgroup H iff the central extension splits over H, iff the preimage of H is abelian",
    "abelian subgroups may be replaced by two-generated ones <x, y>",
    "for commuting x, y and cocycle f, the lifted commutator equals f(x,y) - f(y,x); the kernel K asks it to vanish",
    "H^2(G, Q/Z)_(p) = Z^2(G, Z_{p^a}) / (B^2 + carry classes) with a = v_p(|G|), since |G| annihilates H^2",
]


@dataclass
class B0Report:
    group: str
    order: int
    p: int
    a: int
    log_orders: dict
    invariants: list[int]
    checks: dict
    seconds: float
    stable: bool | None = None
    stabilized_invariants: list[int] | None = None
    unknowns: int = 0
    equations: int = 0
    justification: list[str] = field(default_factory=lambda: list(JUSTIFICATION))

    @property
    def trivial(self) -> bool:
        return not self.invariants

    @property
    def b0_order(self) -> int:
        out = 1
        for d in self.invariants:
            out *= d
        return out

    def to_json(self, timing: bool = True) -> dict:
        d = {
            "group": self.group,
            "order": self.order,
            "p": self.p,
            "a": self.a,
            "log_orders": self.log_orders,
            "B0_invariants": self.invariants,
            "B0_order": self.b0_order,
            "trivial": self.trivial,
            "checks": self.checks,
            "unknowns": self.unknowns,
            "equations": self.equations,
            "justification": self.justification,
        }
        if self.stable is not None:
            d["stable"] = self.stable
            d["stabilized_invariants"] = self.stabilized_invariants
        if timing:
            d["seconds"] = round(self.seconds, 3)
        return d


def b0_order(
    G: FiniteGroup, p: int, a: int | None = None, stabilize: bool = False, threads: int = 1,
    max_order: int | None = None,
) -> B0Report:
    """B0(G)_(p) by cocycle linear algebra.  ``max_order`` overrides the
    default order budget for this prime."""
    t0 = time.perf_counter()
    if G.n % p:
        return B0Report(G.name, G.n, p, 0, {}, [], {"p_divides_order": False}, 0.0)
    if a is None:
        a = valuation(G.n, p)
    data = cocycle_data(G, p, a, threads, max_order)
    inv = data.invariants()
    log_orders = {
        "Z2": data.Z2.log_order(),
        "B2": data.B2.log_order(),
        "K": data.K.log_order(),
        "carry": data.carry_span.log_order(),
        "B2+carry": data.D.log_order(),
    }
    rep = B0Report(
        G.name,
        G.n,
        p,
        a,
        log_orders,
        inv,
        dict(data.checks),
        0.0,
        unknowns=data.solution.unknowns,
        equations=data.solution.equations,
    )
    if stabilize:
        other = cocycle_data(G, p, a + 1, threads, max_order).invariants()
        rep.stable = other == inv
        rep.stabilized_invariants = other
    rep.seconds = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# restriction and inflation
# ---------------------------------------------------------------------------

def restriction(G: FiniteGroup, H: Subgroup, f: np.ndarray) -> tuple[FiniteGroup, np.ndarray]:
    """Restrict the cocycle table f to H; returns (H as a group, table on H)."""
    if H.parent is not G:
        raise NotASubgroup("subgroup belongs to a different group")
    from .groups import make_subgroup

    make_subgroup(G, H.members)
    Hg, emb = H.as_group()
    if Hg.identity != 0:
        raise NotASubgroup("subgroup must contain the identity")
    f = np.asarray(f)
    return Hg, f[np.ix_(emb, emb)]


def restriction_is_b0_trivial(G: FiniteGroup, H: Subgroup, f: np.ndarray, p: int, a: int) -> bool:
    """Is the restriction of f to H a coboundary plus carry classes?"""
    Hg, fh = restriction(G, H, f)
    if Hg.n == 1:
        return True
    return cocycle_data(Hg, p, a).in_denominator(fh % p**a)


@dataclass
class InflationResult:
    order: int
    generator: np.ndarray | None
    pairing_pairs: list[tuple[int, int]]
    pairing_values: dict
    labels: list[str]

    def pairs_nonzero(self, x: int, y: int) -> bool:
        key = (min(x, y), max(x, y))
        return self.pairing_values.get(key, 0) != 0

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "pairing_pairs": [[self.labels[x], self.labels[y]] for x, y in self.pairing_pairs],
        }


def pullback(G: FiniteGroup, proj: np.ndarray, fA: np.ndarray) -> np.ndarray:
    proj = np.asarray(proj)
    return np.asarray(fA)[np.ix_(proj, proj)]


def inflation_image(
    G: FiniteGroup, p: int, a: int | None = None, max_pairs: int = 64, max_order: int | None = None
) -> InflationResult:
    """Image of H^2(G/[G,G]) -> H^2(G) on p-parts, with a commuting pair on
    which a surviving class has nonzero antisymmetric part."""
    if a is None:
        a = valuation(G.n, p)
    data = cocycle_data(G, p, a, max_order=max_order)
    ab = abelianization(G)
    A, proj = ab.group, ab.projection
    labels = [G.label(i) for i in range(G.n)]
    if A.n == 1:
        return InflationResult(1, None, [], {}, labels)
    if A.identity != 0:
        raise ValueError("abelianization must have identity 0")
    ZA = gauge_cocycles(A, p, a).solutions
    b2A = coboundary_generators(A, p**a)
    cA = carry_tables(A, p**a)
    tables = [pullback(G, proj, f) for f in list(ZA) + list(b2A) + list(cA)]
    if not tables:
        return InflationResult(1, None, [], {}, labels)
    coords = np.array([data.table_to_coords(t) for t in tables])
    image = data.D + Subspace(p, a, len(data.cols), coords)
    order = p ** (image.log_order() - data.D.log_order())
    if order == 1:
        return InflationResult(1, None, [], {}, labels)
    # a surviving class detected by the commutator pairing
    gen, vals = None, {}
    for t, c in zip(tables, coords):
        if data.D.contains(c):
            continue
        ph = phi(t, data.xs, data.ys, data.m)
        if ph.any():
            gen = t
            vals = {pr: int(v) for pr, v in zip(data.pairs, ph) if v}
            break
    pairs = list(vals)[:max_pairs]
    return InflationResult(order, gen, pairs, vals, labels)


def bilinear_pullback(G: FiniteGroup, p: int, a: int, basis_lifts: list[int], i: int, j: int) -> np.ndarray:
    """Cocycle table p^(a-1) * x_i*(g) x_j*(h) pulled back from G/[G,G],
    x_k* the coordinates for the A-basis given by ``basis_lifts``.  Its class
    is the image of x_i* ^ x_j* under inflation."""
    ab = abelianization(G)
    A, proj = ab.group, ab.projection
    basis = [int(proj[g]) for g in basis_lifts]
    if greedy_basis(A, range(A.n), p, basis) != basis:
        raise ValueError("lifts do not give a basis of G/[G,G]")
    coords = coordinates(A, basis, p)
    cvec = np.array([coords[int(proj[g])] for g in range(G.n)], dtype=np.int64)
    f = p ** (a - 1) * cvec[:, i][:, None] * cvec[:, j][None, :]
    return f % p**a
