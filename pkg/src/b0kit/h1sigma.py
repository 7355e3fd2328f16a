"""Crossed homomorphisms A -> W for A = F_p^r acting on W = F_p^t, and the
joint restriction of H^1(A, W) to the cyclic subgroups of A.

Elements of A are indexed by sum c_i p^i.  A crossed homomorphism is stored
by its values on the generators e_1..e_r, concatenated (length r*t).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidAction, NotApplicable, TooLarge
from .groups import (
    FiniteGroup,
    coordinates,
    derived_subgroup,
    greedy_basis,
    group_prime,
    is_elementary_abelian,
    quotient,
)
from .modular import Subspace, left_kernel, right_kernel

A_BUDGET = 4096
ALL_PAIRS_BUDGET = 1024


def _matpow(M: np.ndarray, k: int, p: int) -> np.ndarray:
    out = np.eye(M.shape[0], dtype=np.int64)
    for _ in range(k):
        out = (out @ M) % p
    return out


def _rank_mod_p(M: np.ndarray, p: int) -> int:
    return Subspace(p, 1, M.shape[1], M).rank() if M.size else 0


@dataclass
class ActionModule:
    p: int
    r: int
    t: int
    mats: list[np.ndarray]
    a_labels: list[str] = field(default_factory=list)
    w_labels: list[str] = field(default_factory=list)

    def __post_init__(self):
        p, t = self.p, self.t
        self.mats = [np.asarray(M, dtype=np.int64).reshape(t, t) % p for M in self.mats]
        if len(self.mats) != self.r:
            raise InvalidAction(f"expected {self.r} generator matrices, got {len(self.mats)}")
        I = np.eye(t, dtype=np.int64)
        for i, M in enumerate(self.mats):
            if t and _rank_mod_p(M, p) != t:
                raise InvalidAction(f"generator {i} acts non-invertibly")
            if not (_matpow(M, p, p) == I).all():
                raise InvalidAction(f"generator {i} does not have order dividing p")
        for M, N in itertools.combinations(self.mats, 2):
            if not (((M @ N) - (N @ M)) % p == 0).all():
                raise InvalidAction("generator matrices do not commute")

    @property
    def size(self) -> int:
        return self.p**self.r

    def element(self, idx: int) -> tuple[int, ...]:
        return tuple((idx // self.p**i) % self.p for i in range(self.r))

    def index(self, coords) -> int:
        return int(sum(int(c) % self.p * self.p**i for i, c in enumerate(coords)))

    def action(self, coords) -> np.ndarray:
        out = np.eye(self.t, dtype=np.int64)
        for M, c in zip(self.mats, coords):
            out = (out @ _matpow(M, int(c) % self.p, self.p)) % self.p
        return out

    def fixed_space(self) -> Subspace:
        if self.t == 0:
            return Subspace(self.p, 1, 0)
        stack = np.vstack([(M - np.eye(self.t, dtype=np.int64)) % self.p for M in self.mats])
        return Subspace(self.p, 1, self.t, right_kernel(stack, self.p, 1))

    def to_json(self) -> dict:
        return {"p": self.p, "r": self.r, "t": self.t, "action": [M.tolist() for M in self.mats],
                "a_labels": self.a_labels, "w_labels": self.w_labels}

    @classmethod
    def from_json(cls, d: dict) -> "ActionModule":
        return cls(int(d["p"]), int(d["r"]), int(d["t"]), [np.array(M) for M in d["action"]],
                   list(d.get("a_labels", [])), list(d.get("w_labels", [])))


def _check_size(m: ActionModule) -> None:
    if m.size > A_BUDGET:
        raise TooLarge(f"|A| = {m.size} exceeds {A_BUDGET}")


def value_map(m: ActionModule, coords) -> np.ndarray:
    """The t x (r t) matrix sending generator values to f(a), using
    f(x + e_i) = f(x) + x . f(e_i)."""
    p, r, t = m.p, m.r, m.t
    L = np.zeros((t, r * t), dtype=np.int64)
    acting = np.eye(t, dtype=np.int64)
    for i, c in enumerate(coords):
        for _ in range(int(c) % p):
            L[:, i * t:(i + 1) * t] = (L[:, i * t:(i + 1) * t] + acting) % p
            acting = (acting @ m.mats[i]) % p
    return L


def crossed_homs_generators(m: ActionModule) -> Subspace:
    """Z^1 from the presentation of F_p^r: the norm of each generator kills
    f(e_i), and (M_j - 1) f(e_i) = (M_i - 1) f(e_j)."""
    p, r, t = m.p, m.r, m.t
    _check_size(m)
    D = r * t
    if D == 0:
        return Subspace(p, 1, 0)
    I = np.eye(t, dtype=np.int64)
    rows = []
    for i, M in enumerate(m.mats):
        norm = sum(_matpow(M, k, p) for k in range(p)) % p
        blk = np.zeros((t, D), dtype=np.int64)
        blk[:, i * t:(i + 1) * t] = norm
        rows.append(blk)
    for i, j in itertools.combinations(range(r), 2):
        blk = np.zeros((t, D), dtype=np.int64)
        blk[:, i * t:(i + 1) * t] = m.mats[j] - I
        blk[:, j * t:(j + 1) * t] = -(m.mats[i] - I)
        rows.append(blk % p)
    E = np.vstack(rows)
    return Subspace(p, 1, D, right_kernel(E, p, 1))


def crossed_homs(m: ActionModule) -> Subspace:
    """Z^1 from f(a + b) = f(a) + a . f(b) over all pairs, with unknowns the
    values on every element of A; returned as generator-value vectors."""
    p, r, t = m.p, m.r, m.t
    _check_size(m)
    if m.size > ALL_PAIRS_BUDGET:
        raise TooLarge(f"all-pairs system limited to |A| <= {ALL_PAIRS_BUDGET}")
    n = m.size
    V = n * t
    if r * t == 0:
        return Subspace(p, 1, 0)
    acts = [m.action(m.element(a)) for a in range(n)]
    eqs = Subspace(p, 1, V)
    I = np.eye(t, dtype=np.int64)
    for a in range(n):
        ca = m.element(a)
        block = []
        for b in range(n):
            cb = m.element(b)
            ab = m.index([x + y for x, y in zip(ca, cb)])
            E = np.zeros((t, V), dtype=np.int64)
            E[:, ab * t:(ab + 1) * t] += I
            E[:, a * t:(a + 1) * t] -= I
            E[:, b * t:(b + 1) * t] -= acts[a]
            block.append(E % p)
        eqs = eqs.stream(np.vstack(block))
    sol = right_kernel(eqs.rows, p, 1) if len(eqs) else np.eye(V, dtype=np.int64)
    gen_cols = np.concatenate([np.arange(p**i * t, p**i * t + t) for i in range(r)])
    return Subspace(p, 1, r * t, sol[:, gen_cols] if len(sol) else None)


def principal_crossed_homs(m: ActionModule) -> Subspace:
    """B^1: a -> a.w - w, as generator values ((M_i - 1) w)_i."""
    p, r, t = m.p, m.r, m.t
    if r * t == 0:
        return Subspace(p, 1, r * t)
    I = np.eye(t, dtype=np.int64)
    cols = np.vstack([(M - I) % p for M in m.mats])  # (r t) x t, column k = image of w = e_k
    return Subspace(p, 1, r * t, cols.T)


def cyclic_representatives(m: ActionModule) -> list[tuple[int, ...]]:
    """One generator per cyclic subgroup: first nonzero coordinate 1."""
    reps = []
    for cs in itertools.product(range(m.p), repeat=m.r):
        nz = [c for c in cs if c]
        if nz and nz[0] == 1:
            reps.append(cs)
    return reps


@dataclass
class SigmaVerdict:
    injective: bool
    dim_z1: int
    dim_b1: int
    dim_h1: int
    dim_joint_kernel: int
    cyclic_subgroups: int
    witness: list[int] | None

    def to_json(self) -> dict:
        return self.__dict__.copy()


def sigma_injective(m: ActionModule) -> SigmaVerdict:
    """Is H^1(A, W) -> prod over cyclic <a> of H^1(<a>, W) injective?

    A class restricts to zero on <a> exactly when f(a) lies in (a - 1) W.
    """
    p, t = m.p, m.t
    _check_size(m)
    Z1 = crossed_homs_generators(m)
    B1 = principal_crossed_homs(m)
    if not Z1.contains_space(B1):
        raise AssertionError("principal crossed homomorphisms escaped Z^1")
    reps = cyclic_representatives(m)
    I = np.eye(t, dtype=np.int64)
    conds = []
    for a in reps:
        img = (m.action(a) - I) % p
        # rows y with y . (a - 1) w = 0 for every w
        ann = left_kernel(img, p, 1)
        if len(ann):
            conds.append((ann @ value_map(m, a)) % p)
    Zb = Z1.rows
    if conds and len(Zb):
        C = np.vstack(conds)
        combos = left_kernel((Zb @ C.T) % p, p, 1)
        J = Subspace(p, 1, Z1.N, (combos @ Zb) % p if len(combos) else None)
    else:
        J = Z1
    if not J.contains_space(B1):
        raise AssertionError("principal classes must restrict to zero")
    injective = J == B1
    witness = None
    if not injective:
        for row in J.rows:
            if not B1.contains(row):
                witness = [int(x) for x in row]
                break
    return SigmaVerdict(injective, Z1.rank(), B1.rank(), Z1.rank() - B1.rank(), J.rank(), len(reps), witness)


# ---------------------------------------------------------------------------
# modules from groups, and fixed regression inputs
# ---------------------------------------------------------------------------

def module_from_group(
    G: FiniteGroup, p: int, lifts: list[int] | None = None, c_preferred: list[int] = ()
) -> ActionModule:
    """A = G/[G,G] acting on W = Hom([G,G], Z_p) by (g.phi)(c) = phi(g^-1 c g).

    W carries the basis dual to a basis of [G,G] (scanned from ``c_preferred``
    first, then in index order)."""
    D = derived_subgroup(G)
    A, proj = quotient(G, D)
    if group_prime(A.n) not in (p, None) or A.n == 1:
        raise NotApplicable("G/[G,G] is not a nontrivial p-group")
    if any(o not in (1, p) for o in A.element_orders()):
        raise NotApplicable("G/[G,G] is not elementary abelian")
    if D.order > 1 and (group_prime(D.order) != p or not is_elementary_abelian(G, D.members, p)):
        raise NotApplicable("[G,G] is not an elementary abelian p-group")
    a_basis = greedy_basis(A, range(A.n), p)
    if lifts is None:
        reps: dict[int, int] = {}
        for x in range(G.n):
            reps.setdefault(int(proj[x]), x)
        lifts = [reps[b] for b in a_basis]
    elif [int(proj[x]) for x in lifts] != a_basis:
        raise ValueError("lifts do not project onto the A-basis")
    c_basis = greedy_basis(G, D.members, p, c_preferred) if D.order > 1 else []
    coords = coordinates(G, c_basis, p)
    t = len(c_basis)
    mats = []
    for g in lifts:
        gi = G.inverse(g)
        # conjugation c -> g^-1 c g in D-coordinates, columns = basis images
        N = np.array([coords[G.mul(G.mul(gi, c), g)] for c in c_basis], dtype=np.int64).T.reshape(t, t)
        mats.append(N.T % p)  # dual action on Hom(D, Z_p) in the dual basis
    return ActionModule(p, len(lifts), t, mats, [G.label(x) for x in lifts], [G.label(c) + "*" for c in c_basis])


def extension_module(p: int, r: int, phi: list[tuple[int, int]]) -> ActionModule:
    """W = V + <c> with V = F_p^2 trivial and a.c = c + sum x_i*(a) v_j over
    the (i, j) listed in phi.  Basis order v_1, v_2, c."""
    t = 3
    mats = []
    for i in range(r):
        M = np.eye(t, dtype=np.int64)
        for ii, j in phi:
            if ii == i:
                M[j, 2] = (M[j, 2] + 1) % p
        mats.append(M)
    return ActionModule(p, r, t, mats, [f"x{i + 1}" for i in range(r)], ["v1", "v2", "c"])


def regression_modules() -> dict[str, ActionModule]:
    """The two normal forms of the connecting element, over A = Z_2^3."""
    return {
        "x1*(x)v1": extension_module(2, 3, [(0, 0)]),
        "x1*(x)v1+x2*(x)v2": extension_module(2, 3, [(0, 0), (1, 1)]),
    }
