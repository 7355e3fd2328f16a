"""Finite groups as explicit multiplication tables.

Elements are integer indices.  Groups built by :func:`closure` index their
elements in discovery order: identity 0, then the generators, then
breadth-first products ``x * s`` by generators on the right.  That order is
what makes every downstream scan (bases, lifts, Sylow search) reproducible.

Tables are materialized up to ``TABLE_LIMIT`` elements; above that a group
keeps its element list and multiplies on demand.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

import numpy as np

from .errors import (
    InvalidGroup,
    NonInvertibleGenerator,
    NotDividing,
    OrderExceeded,
    SearchBudgetExceeded,
)
from .numbers import prime_factors, valuation

TABLE_LIMIT = 4096
ASSOC_FULL_LIMIT = 512
SYLOW_LIMIT = 10**5


class FiniteGroup:
    """A finite group on indices 0..n-1.

    ``table[i, j]`` is the index of ``i * j``.  ``elements`` (optional) holds
    the concrete objects (permutation tuples, matrices) behind the indices.
    """

    def __init__(
        self,
        table: np.ndarray | None = None,
        *,
        identity: int = 0,
        labels: Sequence[str] | None = None,
        elements: Sequence | None = None,
        mul: Callable | None = None,
        generators: Sequence[int] | None = None,
        name: str = "",
        check: bool = True,
    ):
        self.name = name
        self.identity = identity
        self.elements = list(elements) if elements is not None else None
        self._mul_obj = mul
        self._index = None
        if table is not None:
            self.table = np.ascontiguousarray(table, dtype=np.int32)
            self.n = self.table.shape[0]
            if check:
                _validate_table(self.table, identity)
            inv = np.empty(self.n, dtype=np.int32)
            rows, cols = np.nonzero(self.table == identity)
            inv[rows] = cols
            self.inv = inv
        else:
            if self.elements is None or mul is None:
                raise InvalidGroup("need a table or elements with a multiplication")
            self.table = None
            self.n = len(self.elements)
            self.inv = None
        self.labels = list(labels) if labels is not None else None
        self._generators = list(generators) if generators is not None else None

    # -- basic queries --------------------------------------------------
    def __len__(self):
        return self.n

    @property
    def order(self) -> int:
        return self.n

    def __repr__(self):
        nm = self.name or "FiniteGroup"
        return f"<{nm} order={self.n}>"

    def index_of(self, obj: Hashable) -> int:
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.elements)}
        return self._index[obj]

    def mul(self, i: int, j: int) -> int:
        if self.table is not None:
            return int(self.table[i, j])
        return self.index_of(self._mul_obj(self.elements[i], self.elements[j]))

    def inverse(self, i: int) -> int:
        if self.inv is not None:
            return int(self.inv[i])
        x = i
        while True:
            y = self.mul(x, i)
            if y == self.identity:
                return x
            x = y

    def commutator(self, i: int, j: int) -> int:
        """[i, j] = i j i^-1 j^-1."""
        return self.mul(self.mul(i, j), self.mul(self.inverse(i), self.inverse(j)))

    def power(self, i: int, k: int) -> int:
        if k < 0:
            i, k = self.inverse(i), -k
        out, base = self.identity, i
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != self.identity:
            x = self.mul(x, i)
            k += 1
        return k

    def element_orders(self) -> np.ndarray:
        if self.table is None:
            return np.array([self.element_order(i) for i in range(self.n)])
        n = self.n
        orders = np.zeros(n, dtype=np.int64)
        idx = np.arange(n)
        cur = idx.copy()
        k = 1
        while (orders == 0).any():
            done = (cur == self.identity) & (orders == 0)
            orders[done] = k
            cur = self.table[cur, idx]
            k += 1
        return orders

    def label(self, i: int) -> str:
        if self.labels is not None:
            return self.labels[i]
        return f"g{i}"

    def find_label(self, lab: str) -> int:
        if self.labels is None:
            raise KeyError(lab)
        return self.labels.index(lab)

    def is_abelian(self) -> bool:
        if self.table is not None:
            return bool((self.table == self.table.T).all())
        gens = self.generators
        return all(self.mul(x, y) == self.mul(y, x) for x in gens for y in gens)

    @property
    def generators(self) -> list[int]:
        if self._generators is None:
            self._generators = generating_set(self)
        return self._generators

    def to_json(self) -> dict:
        if self.table is None:
            raise InvalidGroup("group has no materialized table")
        return {"table": self.table.tolist()}


def _validate_table(T: np.ndarray, identity: int) -> None:
    n = T.shape[0]
    if T.shape != (n, n):
        raise InvalidGroup("table must be square")
    if n == 0:
        raise InvalidGroup("empty group")
    if T.min() < 0 or T.max() >= n:
        raise InvalidGroup("table entries out of range")
    ar = np.arange(n)
    if not (T[identity] == ar).all() or not (T[:, identity] == ar).all():
        raise InvalidGroup("identity row/column is not the identity permutation")
    srt = np.sort(T, axis=1)
    if not (srt == ar).all() or not (np.sort(T, axis=0) == ar[:, None]).all():
        raise InvalidGroup("table is not a Latin square")
    if n <= ASSOC_FULL_LIMIT:
        for i in range(n):
            # (i*j)*k vs i*(j*k) over all j, k
            if not (T[T[i]] == T[i][T]).all():
                raise InvalidGroup("multiplication is not associative")
    else:
        rng = np.random.default_rng(0)
        i, j, k = rng.integers(0, n, size=(3, 100_000))
        if not (T[T[i, j], k] == T[i, T[j, k]]).all():
            raise InvalidGroup("multiplication is not associative")


# ---------------------------------------------------------------------------
# closure
# ---------------------------------------------------------------------------

def _perm_mul(x: tuple, y: tuple) -> tuple:
    # (x * y)(i) = x(y(i))
    return tuple(x[i] for i in y)


def closure(
    generators: Sequence,
    max_order: int = TABLE_LIMIT,
    *,
    projective: bool = False,
    labeler: Callable | None = None,
    name: str = "",
) -> FiniteGroup:
    """Breadth-first closure of permutations (tuples of images) or matrices.

    Matrices must be invertible; with ``projective`` they are first replaced by
    their projective canonical representative, so scalar multiples coincide.
    """
    gens = list(generators)
    if not gens:
        raise InvalidGroup("need at least one generator")
    first = gens[0]
    if isinstance(first, (tuple, list)):
        gens = [tuple(int(v) for v in g) for g in gens]
        deg = len(gens[0])
        for g in gens:
            if len(g) != deg or sorted(g) != list(range(deg)):
                raise NonInvertibleGenerator(f"not a permutation of 0..{deg - 1}: {g}")
        ident = tuple(range(deg))
        mul = _perm_mul
        canon = lambda x: x  # noqa: E731
    else:
        for g in gens:
            if g.det().is_zero():
                raise NonInvertibleGenerator("singular matrix generator")
        if projective:
            canon = lambda x: x.projective_canonical()  # noqa: E731
        else:
            canon = lambda x: x  # noqa: E731
        gens = [canon(g) for g in gens]
        ident = canon(first.identity_like())
        mul = lambda x, y: canon(x * y)  # noqa: E731

    elements = [ident]
    index = {ident: 0}
    gen_idx = []
    for g in gens:
        if g not in index:
            if len(elements) >= max_order:
                raise OrderExceeded(f"closure exceeds max_order={max_order}")
            index[g] = len(elements)
            elements.append(g)
        gen_idx.append(index[g])
    gen_idx = list(dict.fromkeys(i for i in gen_idx if i != 0))
    gen_objs = [elements[i] for i in gen_idx]

    # right multiplication by each generator, as index permutations
    right: list[list[int]] = [[] for _ in gen_objs]
    head = 0
    while head < len(elements):
        x = elements[head]
        for s, g in enumerate(gen_objs):
            y = mul(x, g)
            j = index.get(y)
            if j is None:
                if len(elements) >= max_order:
                    raise OrderExceeded(f"closure exceeds max_order={max_order}")
                j = len(elements)
                index[y] = j
                elements.append(y)
            right[s].append(j)
        head += 1
    n = len(elements)
    labels = [labeler(e) for e in elements] if labeler else None
    if n > TABLE_LIMIT:
        G = FiniteGroup(None, elements=elements, mul=mul, generators=gen_idx, labels=labels, name=name)
        G._index = index
        return G
    R = [np.asarray(r, dtype=np.int32) for r in right]
    T = _table_from_right_actions(n, R)
    G = FiniteGroup(T, elements=elements, mul=mul, generators=gen_idx, labels=labels, name=name, check=False)
    G._index = index
    return G


def _table_from_right_actions(n: int, R: list[np.ndarray]) -> np.ndarray:
    """Full table from right multiplication permutations of the generators."""
    T = np.full((n, n), -1, dtype=np.int32)
    T[:, 0] = np.arange(n)
    done = np.zeros(n, dtype=bool)
    done[0] = True
    queue = [0]
    head = 0
    while head < len(queue):
        y = queue[head]
        head += 1
        for Rs in R:
            z = int(Rs[y])
            if not done[z]:
                # x * z = (x * y) * s
                T[:, z] = Rs[T[:, y]]
                done[z] = True
                queue.append(z)
    return T


def from_table(table, *, identity: int | None = None, labels=None, name: str = "") -> FiniteGroup:
    T = np.asarray(table, dtype=np.int32)
    if identity is None:
        ar = np.arange(T.shape[0])
        cand = np.flatnonzero((T == ar).all(axis=1))
        if cand.size == 0:
            raise InvalidGroup("no identity element")
        identity = int(cand[0])
    return FiniteGroup(T, identity=identity, labels=labels, name=name)


def generating_set(G: FiniteGroup) -> list[int]:
    """Greedy generating set in index order."""
    gens: list[int] = []
    members = {G.identity}
    for x in range(G.n):
        if x in members:
            continue
        gens.append(x)
        members = set(subgroup_closure(G, gens).members)
        if len(members) == G.n:
            break
    return gens


# ---------------------------------------------------------------------------
# subgroups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(repr=False, compare=False)
    members: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self._set

    @property
    def _set(self) -> frozenset:
        s = self.__dict__.get("_cached_set")
        if s is None:
            s = frozenset(self.members)
            object.__setattr__(self, "_cached_set", s)
        return s

    def as_group(self, name: str = "") -> tuple[FiniteGroup, np.ndarray]:
        """The subgroup as a standalone table group, plus the embedding
        (array mapping new index -> parent index)."""
        G = self.parent
        mem = np.asarray(self.members, dtype=np.int64)
        pos = {int(x): i for i, x in enumerate(mem)}
        if G.table is not None:
            lookup = np.full(G.n, -1, dtype=np.int64)
            lookup[mem] = np.arange(len(mem))
            T = lookup[G.table[np.ix_(mem, mem)]]
        else:
            T = np.array([[pos[G.mul(int(x), int(y))] for y in mem] for x in mem])
        labels = [G.label(int(x)) for x in mem] if G.labels else None
        H = FiniteGroup(T, identity=pos[G.identity], labels=labels, name=name, check=False)
        return H, mem

    def is_abelian(self) -> bool:
        G = self.parent
        if G.table is not None:
            mem = np.asarray(self.members)
            sub = G.table[np.ix_(mem, mem)]
            return bool((sub == sub.T).all())
        return all(G.mul(x, y) == G.mul(y, x) for x in self.members for y in self.members)


def subgroup_closure(G: FiniteGroup, gens: Sequence[int]) -> Subgroup:
    members = [G.identity]
    seen = {G.identity}
    gens = [int(g) for g in gens if int(g) != G.identity]
    head = 0
    while head < len(members):
        x = members[head]
        head += 1
        for s in gens:
            y = G.mul(x, s)
            if y not in seen:
                seen.add(y)
                members.append(y)
    return Subgroup(G, tuple(sorted(members)))


def make_subgroup(G: FiniteGroup, members: Sequence[int]) -> Subgroup:
    from .errors import NotASubgroup

    mem = sorted(set(int(x) for x in members))
    s = set(mem)
    if G.identity not in s:
        raise NotASubgroup("missing identity")
    if G.table is not None:
        arr = np.asarray(mem)
        if not np.isin(G.table[np.ix_(arr, arr)], arr).all() or not np.isin(G.inv[arr], arr).all():
            raise NotASubgroup("not closed under multiplication/inverses")
    else:
        for x in mem:
            if G.inverse(x) not in s or any(G.mul(x, y) not in s for y in mem):
                raise NotASubgroup("not closed under multiplication/inverses")
    return Subgroup(G, tuple(mem))


def commuting_pairs(G: FiniteGroup) -> list[tuple[int, int]]:
    """Ordered pairs x < y of non-identity elements with xy = yx."""
    if G.table is not None:
        comm = G.table == G.table.T
        xs, ys = np.nonzero(np.triu(comm, k=1))
        pairs = [(int(x), int(y)) for x, y in zip(xs, ys) if x != G.identity and y != G.identity]
        return pairs
    out = []
    for x in range(G.n):
        for y in range(x + 1, G.n):
            if G.identity not in (x, y) and G.mul(x, y) == G.mul(y, x):
                out.append((x, y))
    return out


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    if G.table is not None:
        T, inv = G.table, G.inv
        comms = T[T, T[np.ix_(inv, inv)]]  # [x,y] = (x y)(x^-1 y^-1)
        gens = np.unique(comms)
    else:
        gens = sorted({G.commutator(x, y) for x in G.generators for y in G.generators})
        # normal closure of generator commutators is the derived subgroup
        S = set(subgroup_closure(G, gens).members)
        changed = True
        while changed:
            changed = False
            for g in G.generators:
                gi = G.inverse(g)
                for x in list(S):
                    c = G.mul(G.mul(g, x), gi)
                    if c not in S:
                        S = set(subgroup_closure(G, list(S) + [c]).members)
                        changed = True
        return Subgroup(G, tuple(sorted(S)))
    return subgroup_closure(G, [int(g) for g in gens])


def center(G: FiniteGroup) -> Subgroup:
    if G.table is not None:
        central = (G.table == G.table.T).all(axis=1)
        return Subgroup(G, tuple(int(x) for x in np.flatnonzero(central)))
    gens = G.generators
    return Subgroup(G, tuple(x for x in range(G.n) if all(G.mul(x, g) == G.mul(g, x) for g in gens)))


def is_normal(G: FiniteGroup, N: Subgroup) -> bool:
    mem = set(N.members)
    return all(G.mul(G.mul(g, x), G.inverse(g)) in mem for g in G.generators for x in N.members)


def quotient(G: FiniteGroup, N: Subgroup, name: str = "") -> tuple[FiniteGroup, np.ndarray]:
    """G/N for normal N.  Cosets are numbered by their smallest member, so the
    identity coset is 0 when the identity is index 0."""
    if G.table is None:
        raise InvalidGroup("quotient needs a materialized table")
    mem = np.asarray(N.members)
    cos_min = G.table[:, mem].min(axis=1)  # coset xN, smallest member
    reps, proj = np.unique(cos_min, return_inverse=True)
    T = proj[G.table[np.ix_(reps, reps)]]
    labels = [G.label(int(r)) for r in reps] if G.labels else None
    Q = FiniteGroup(T, identity=int(proj[G.identity]), labels=labels, name=name, check=False)
    return Q, proj.astype(np.int64)


def abelian_invariants(A: FiniteGroup) -> list[int]:
    """Elementary divisors d1 | d2 | ... of an abelian group (empty = trivial)."""
    if not A.is_abelian():
        raise InvalidGroup("group is not abelian")
    orders = A.element_orders()
    primary: list[list[int]] = []
    for p in prime_factors(A.n):
        v = valuation(A.n, p)
        # |A[p^j]| for j = 0..v
        sizes = [1] + [int(np.sum(p**j % orders == 0)) for j in range(1, v + 1)]
        logs = [round(math.log(s, p)) for s in sizes]
        at_least = [logs[j] - logs[j - 1] for j in range(1, v + 1)] + [0]
        parts = []
        for j in range(v):
            parts.extend([p ** (j + 1)] * (at_least[j] - at_least[j + 1]))
        primary.append(sorted(parts, reverse=True))
    # combine primary parts largest-first into the divisibility chain
    width = max((len(pp) for pp in primary), default=0)
    divisors = []
    for i in range(width):
        d = 1
        for pp in primary:
            if i < len(pp):
                d *= pp[i]
        divisors.append(d)
    return sorted(divisors)


@dataclass
class Abelianization:
    group: FiniteGroup
    projection: np.ndarray
    invariants: list[int]
    derived: Subgroup


def abelianization(G: FiniteGroup) -> Abelianization:
    D = derived_subgroup(G)
    A, proj = quotient(G, D, name=f"{G.name}^ab" if G.name else "")
    return Abelianization(A, proj, abelian_invariants(A), D)


# ---------------------------------------------------------------------------
# Sylow subgroups
# ---------------------------------------------------------------------------

def normalizer(G: FiniteGroup, P: Subgroup) -> list[int]:
    mem = np.asarray(P.members)
    if G.table is not None:
        T, inv = G.table, G.inv
        conj = T[T[:, mem], inv[:, None]]  # x m x^-1
        srt = np.sort(conj, axis=1)
        return [int(x) for x in np.flatnonzero((srt == mem).all(axis=1))]
    pm = set(P.members)
    out = []
    gens = subgroup_generators(G, P)
    for x in range(G.n):
        xi = G.inverse(x)
        if all(G.mul(G.mul(x, g), xi) in pm for g in gens):
            out.append(x)
    return out


def subgroup_generators(G: FiniteGroup, P: Subgroup) -> list[int]:
    gens: list[int] = []
    cur = {G.identity}
    for x in P.members:
        if x not in cur:
            gens.append(x)
            cur = set(subgroup_closure(G, gens).members)
    return gens


def sylow(G: FiniteGroup, p: int, budget: int = SYLOW_LIMIT) -> Subgroup:
    """A Sylow p-subgroup by greedy extension inside normalizers."""
    if G.n % p:
        raise NotDividing(f"{p} does not divide |G| = {G.n}")
    if G.n > budget:
        raise SearchBudgetExceeded(f"|G| = {G.n} exceeds the Sylow budget {budget}")
    target = p ** valuation(G.n, p)
    if target == G.n:
        return Subgroup(G, tuple(range(G.n)))
    orders = G.element_orders()
    ppow = [int(x) for x in range(G.n) if orders[x] > 1 and p ** valuation(int(orders[x]), p) == orders[x]]
    best = max(int(orders[x]) for x in ppow)
    start = next(x for x in ppow if orders[x] == best)
    P = subgroup_closure(G, [start])
    steps = 0
    while P.order < target:
        steps += 1
        if steps > 64:
            raise SearchBudgetExceeded("Sylow extension did not converge")
        pm = set(P.members)
        ext = None
        for x in normalizer(G, P):
            if x in pm:
                continue
            if G.power(x, p) in pm:
                ext = x
                break
        if ext is None:
            raise SearchBudgetExceeded("no extending element found in the normalizer")
        P = subgroup_closure(G, list(subgroup_generators(G, P)) + [ext])
    if P.order != target:
        raise SearchBudgetExceeded(f"reached order {P.order}, expected {target}")
    return P


# ---------------------------------------------------------------------------
# elementary abelian sections, class-2 recognition
# ---------------------------------------------------------------------------

def is_elementary_abelian(G: FiniteGroup, members: Sequence[int], p: int) -> bool:
    mem = list(members)
    s = set(mem)
    for x in mem:
        if x != G.identity and G.power(x, p) != G.identity:
            return False
    return all(G.mul(x, y) == G.mul(y, x) for x in mem[:64] for y in mem) and len(s) == p ** round(math.log(len(s), p))


def greedy_basis(G: FiniteGroup, members: Sequence[int], p: int, preferred: Sequence[int] = ()) -> list[int]:
    """F_p-basis of an elementary abelian subgroup, scanning ``preferred``
    first and then ``members`` in index order."""
    members = list(members)
    if not set(preferred) <= set(members):
        raise ValueError("preferred elements must lie in the subgroup")
    basis: list[int] = []
    span = {G.identity}
    for x in list(preferred) + sorted(members):
        if x in span:
            continue
        basis.append(x)
        span = set(subgroup_closure(G, basis).members)
        if len(span) == len(members):
            break
    return basis


def coordinates(G: FiniteGroup, basis: Sequence[int], p: int) -> dict[int, tuple[int, ...]]:
    """Map element -> coordinate vector for the elementary abelian group with
    the given basis."""
    coords: dict[int, tuple[int, ...]] = {}
    for cs in itertools.product(range(p), repeat=len(basis)):
        x = G.identity
        for b, c in zip(basis, cs):
            x = G.mul(x, G.power(b, c))
        coords[x] = cs
    return coords


def group_prime(n: int) -> int | None:
    ps = prime_factors(n)
    return ps[0] if len(ps) == 1 else None


def as_class2_extension(G: FiniteGroup, lifts: Sequence[int] | None = None, a_preferred: Sequence[int] = ()):
    """The commutator datum (A, C, lambda) of a class-2 group with elementary
    abelian A = G/[G,G] and C = [G,G] of the same exponent p; None otherwise.

    ``lifts`` overrides the coset representatives used for the A-basis (the
    result must not depend on it).
    """
    from .wedge import WedgeExtension

    D = derived_subgroup(G)
    Z = set(center(G).members)
    if not set(D.members) <= Z:
        return None
    A, proj = quotient(G, D)
    p = group_prime(A.n)
    if p is None:
        return None
    if any(o not in (1, p) for o in A.element_orders()):
        return None
    if D.order > 1 and (group_prime(D.order) != p or not is_elementary_abelian(G, D.members, p)):
        return None
    a_pref = [int(proj[x]) for x in a_preferred]
    a_basis = greedy_basis(A, range(A.n), p, a_pref)
    if lifts is None:
        reps = {}
        for x in range(G.n):
            reps.setdefault(int(proj[x]), x)
        a_lifts = [reps[b] for b in a_basis]
    else:
        a_lifts = list(lifts)
        if [int(proj[x]) for x in a_lifts] != a_basis:
            raise ValueError("lifts do not project onto the A-basis")
    c_basis = greedy_basis(G, D.members, p) if D.order > 1 else []
    ccoord = coordinates(G, c_basis, p)
    r, s = len(a_basis), len(c_basis)
    pairs = list(itertools.combinations(range(r), 2))
    lam = np.zeros((s, len(pairs)), dtype=np.int64)
    for col, (i, j) in enumerate(pairs):
        lam[:, col] = ccoord[G.commutator(a_lifts[i], a_lifts[j])]
    return WedgeExtension(
        p=p,
        r=r,
        s=s,
        lam=lam,
        a_labels=[G.label(x) for x in a_lifts],
        c_labels=[G.label(x) for x in c_basis],
    )


# ---------------------------------------------------------------------------
# characters, cyclic-by-abelian detection
# ---------------------------------------------------------------------------

def characters(G: FiniteGroup) -> tuple[int, list[np.ndarray]]:
    """All homomorphisms G -> Z_e, e = exponent of G^ab, as value arrays."""
    ab = abelianization(G)
    A, proj = ab.group, ab.projection
    e = ab.invariants[-1] if ab.invariants else 1
    if e == 1:
        return 1, [np.zeros(G.n, dtype=np.int64)]
    gens = generating_set(A)
    gorders = [A.element_order(g) for g in gens]
    # BFS word tree in A
    parent = {A.identity: None}
    order = [A.identity]
    head = 0
    while head < len(order):
        x = order[head]
        head += 1
        for k, g in enumerate(gens):
            y = A.mul(x, g)
            if y not in parent:
                parent[y] = (x, k)
                order.append(y)
    out = []
    choices = [range(0, e, e // math.gcd(o, e)) for o in gorders]
    T = A.table
    for vals in itertools.product(*choices):
        chi = np.zeros(A.n, dtype=np.int64)
        for y in order[1:]:
            x, k = parent[y]
            chi[y] = (chi[x] + vals[k]) % e
        if ((chi[T] - chi[:, None] - chi[None, :]) % e == 0).all():
            out.append(chi[proj])
    return e, out


def is_cyclic_by_abelian(G: FiniteGroup) -> bool:
    """True if some abelian normal N has G/N cyclic (N = kernel of a character)."""
    _, chars = characters(G)
    for chi in chars:
        ker = np.flatnonzero(chi == 0)
        if Subgroup(G, tuple(int(x) for x in ker)).is_abelian():
            return True
    return False


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str = "") -> FiniteGroup:
    """G x H with (g, h) -> g * |H| + h."""
    if G.table is None or H.table is None:
        raise InvalidGroup("direct product needs materialized tables")
    n, m = G.n, H.n
    gi = np.arange(n * m) // m
    hi = np.arange(n * m) % m
    T = G.table[np.ix_(gi, gi)].astype(np.int64) * m + H.table[np.ix_(hi, hi)]
    ident = G.identity * m + H.identity
    labels = None
    if G.labels or H.labels:
        labels = [f"({G.label(int(a))},{H.label(int(b))})" for a, b in zip(gi, hi)]
    return FiniteGroup(T, identity=ident, labels=labels, name=name or f"{G.name}x{H.name}", check=False)
