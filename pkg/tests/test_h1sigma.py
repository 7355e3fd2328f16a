import itertools

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from b0kit.catalog import catalog, dihedral, symmetric
from b0kit.errors import InvalidAction, NotApplicable, TooLarge
from b0kit.field import make_field
from b0kit.h1sigma import (
    ActionModule,
    crossed_homs,
    crossed_homs_generators,
    cyclic_representatives,
    module_from_group,
    principal_crossed_homs,
    regression_modules,
    sigma_injective,
    value_map,
)
from b0kit.matrices import unitriangular_group


def brute_sigma(m: ActionModule):
    """(|Z^1|, |B^1|, |joint kernel|) by enumerating generator values."""
    p, r, t = m.p, m.r, m.t
    W = [np.array(w) for w in itertools.product(range(p), repeat=t)]
    elems = list(itertools.product(range(p), repeat=r))
    I = np.eye(t, dtype=np.int64)
    z1 = b1 = joint = 0
    b1_set = {tuple(np.concatenate([(M - I) @ w % p for M in m.mats])) for w in W} if t else {()}
    for vals in itertools.product(range(p), repeat=r * t):
        v = np.array(vals, dtype=np.int64)
        f = {a: (value_map(m, a) @ v) % p for a in elems}
        ok = all(((f[tuple((x + y) % p for x, y in zip(a, b))] - f[a] - m.action(a) @ f[b]) % p == 0).all()
                 for a in elems for b in elems)
        if not ok:
            continue
        z1 += 1
        b1 += tuple(vals) in b1_set
        images = {a: {tuple((m.action(a) - I) @ w % p) for w in W} for a in elems}
        if all(tuple(f[a]) in images[a] for a in elems):
            joint += 1
    return z1, b1, joint


@st.composite
def modules(draw):
    p = draw(st.sampled_from([2, 3]))
    r = draw(st.integers(1, 3 if p == 2 else 2))
    t = draw(st.integers(1, 3 if p == 2 else 2))
    # commuting unipotent actions: polynomials in one strictly upper triangular N
    N = np.zeros((t, t), dtype=np.int64)
    for i, j in itertools.combinations(range(t), 2):
        N[i, j] = draw(st.integers(0, p - 1))
    mats = []
    for _ in range(r):
        c1, c2 = draw(st.integers(0, p - 1)), draw(st.integers(0, p - 1))
        mats.append((np.eye(t, dtype=np.int64) + c1 * N + c2 * (N @ N)) % p)
    try:
        return ActionModule(p, r, t, mats)
    except InvalidAction:
        assume(False)


@settings(max_examples=40, deadline=None)
@given(modules())
def test_sigma_matches_enumeration(m):
    z1, b1, joint = brute_sigma(m)
    v = sigma_injective(m)
    assert m.p ** v.dim_z1 == z1 and m.p ** v.dim_b1 == b1
    assert m.p ** v.dim_joint_kernel == joint
    assert v.injective == (joint == b1)
    assert crossed_homs(m) == crossed_homs_generators(m)


@pytest.mark.parametrize("name", sorted(regression_modules()))
def test_regression_modules(name):
    m = regression_modules()[name]
    z1, b1, joint = brute_sigma(m)
    v = sigma_injective(m)
    assert (m.p ** v.dim_z1, m.p ** v.dim_b1, m.p ** v.dim_joint_kernel) == (z1, b1, joint)
    assert v.injective == (joint == b1)
    if not v.injective:
        assert v.witness is not None and not principal_crossed_homs(m).contains(v.witness)


def test_trivial_action():
    m = ActionModule(3, 2, 2, [np.eye(2), np.eye(2)])
    v = sigma_injective(m)
    assert (v.dim_z1, v.dim_b1, v.injective) == (4, 0, True)
    assert v.cyclic_subgroups == 4 == len(cyclic_representatives(m))


@pytest.mark.parametrize("p", [2, 3])
def test_rank_one_always_injective(p):
    t = min(p, 3)  # a Jordan block of size t has order p only when t <= p
    N = np.diag([1] * (t - 1), k=1)
    m = ActionModule(p, 1, t, [(np.eye(t, dtype=np.int64) + N) % p])
    assert sigma_injective(m).injective


def test_invalid_actions():
    with pytest.raises(InvalidAction):
        ActionModule(2, 2, 2, [np.eye(2)])
    with pytest.raises(InvalidAction):
        ActionModule(3, 1, 2, [[[1, 1], [0, 2]]])  # order 2, not 3
    with pytest.raises(InvalidAction):
        ActionModule(2, 1, 2, [[[1, 1], [1, 1]]])
    with pytest.raises(InvalidAction):
        ActionModule(2, 2, 3, [[[1, 1, 0], [0, 1, 0], [0, 0, 1]], [[1, 0, 0], [0, 1, 1], [0, 0, 1]]])


def test_budget():
    m = ActionModule(2, 13, 1, [np.eye(1)] * 13)
    with pytest.raises(TooLarge):
        sigma_injective(m)
    with pytest.raises(TooLarge):
        crossed_homs(ActionModule(2, 11, 1, [np.eye(1)] * 11))


def test_ut4_module():
    U = unitriangular_group(make_field(2, 1), 4)
    lab = U.find_label
    m = module_from_group(U, 2, c_preferred=[lab("a_{1,3}"), lab("a_{1,4}"), lab("a_{2,4}")])
    assert (m.r, m.t) == (3, 3)
    assert m.w_labels == ["a_{1,3}*", "a_{1,4}*", "a_{2,4}*"]
    fixed = m.fixed_space()
    assert fixed.rank() == 2
    e = np.eye(3, dtype=np.int64)
    assert fixed.contains(e[0]) and fixed.contains(e[2]) and not fixed.contains(e[1])
    v = sigma_injective(m)
    assert v.injective and v.dim_b1 == 1
    z1, b1, joint = brute_sigma(m)
    assert joint == b1 == 2


def test_module_from_group_shapes():
    m = module_from_group(dihedral(8), 2)  # class 2: trivial action
    assert all((M == np.eye(m.t)).all() for M in m.mats)
    m = module_from_group(catalog("abelian", {"invariants": [2, 2]}), 2)
    assert m.t == 0 and sigma_injective(m).injective
    with pytest.raises(NotApplicable):
        module_from_group(symmetric(3), 2)
    with pytest.raises(NotApplicable):
        module_from_group(catalog("cyclic", {"n": 4}), 2)


def test_json_round_trip():
    m = regression_modules()["x1*(x)v1"]
    back = ActionModule.from_json(m.to_json())
    assert all((a == b).all() for a, b in zip(back.mats, m.mats)) and back.w_labels == m.w_labels
