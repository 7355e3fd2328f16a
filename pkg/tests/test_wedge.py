import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from b0kit.cohomology import b0_order
from b0kit.errors import BadParams, TooLarge
from b0kit.groups import as_class2_extension, center, derived_subgroup
from b0kit.wedge import (
    WedgeExtension,
    all_extensions,
    b0_class2,
    decomposables_in_s,
    group_from_extension,
    named_basis_check,
    random_extension,
    s_lambda,
    s_space,
    search_nontrivial,
    ut3f4_extension,
    wedge_vector,
)


def brute_s_dim(ext):
    """log_p of the number of vectors killed by lambda."""
    D = ext.dim_wedge
    count = sum(1 for v in itertools.product(range(ext.p), repeat=D)
                if not ((ext.lam @ np.array(v)) % ext.p).any())
    return round(np.log(count) / np.log(ext.p))


@st.composite
def extensions(draw):
    p = draw(st.sampled_from([2, 3]))
    r = draw(st.integers(2, 4 if p == 2 else 3))
    s = draw(st.integers(0, 3))
    D = r * (r - 1) // 2
    flat = draw(st.lists(st.integers(0, p - 1), min_size=s * D, max_size=s * D))
    return WedgeExtension(p, r, s, np.array(flat, dtype=np.int64).reshape(s, D))


@settings(max_examples=80, deadline=None)
@given(extensions())
def test_s_space_and_decomposable_span(ext):
    S = s_space(ext)
    assert S.rank() == brute_s_dim(ext)
    # two enumeration orders give the same canonical span
    assert s_lambda(ext, "projective") == s_lambda(ext, "full")
    res = b0_class2(ext)
    assert res.dim_s == S.rank() and 0 <= res.rank <= res.dim_s
    assert res.invariants == [ext.p] * res.rank
    assert len(res.witnesses) == res.dim_s_lambda


def test_wedge_vector_is_alternating():
    x, y = [1, 0, 2], [0, 1, 1]
    assert (wedge_vector(x, y, 3) == (-wedge_vector(y, x, 3)) % 3).all()
    assert not wedge_vector(x, x, 3).any()
    assert wedge_vector([1, 0], [0, 1], 5).tolist() == [1]


def test_lambda_zero_and_injective():
    # lambda = 0: S is all of the exterior square and is spanned by e_i^e_j
    ext = WedgeExtension(2, 4, 0, np.zeros((0, 6)))
    res = b0_class2(ext)
    assert (res.dim_s, res.rank) == (6, 0)
    # injective lambda: S = 0
    ext = WedgeExtension(3, 3, 3, np.eye(3))
    res = b0_class2(ext)
    assert (res.dim_s, res.dim_s_lambda) == (0, 0) and res.trivial


def test_ut3f4_basis():
    ext = ut3f4_extension()
    assert s_space(ext).rank() == 4
    chk = named_basis_check()
    assert chk.ok and chk.rank == 4 and chk.spans_s and chk.in_s and chk.reduced_same_span
    assert chk.drop_one_ranks == [3, 3, 3, 3]
    res = b0_class2(ext)
    assert res.dim_s_lambda == 4 and res.trivial


def test_ut3f4_extension_matches_the_matrix_group():
    from b0kit.field import make_field
    from b0kit.matrices import unitriangular_group

    U = unitriangular_group(make_field(2, 2), 3)
    ext = as_class2_extension(U)
    assert (ext.r, ext.s) == (4, 2)
    assert b0_class2(ext).dim_s == b0_class2(ut3f4_extension()).dim_s == 4


@pytest.mark.parametrize("p,r,s", [(2, 2, 1), (2, 3, 1), (2, 3, 2), (3, 2, 1), (3, 3, 1)])
def test_wedge_agrees_with_cohomology_oracle(p, r, s):
    rng = np.random.default_rng(p * 100 + r * 10 + s)
    for _ in range(4):
        ext = random_extension(p, r, s, rng)
        G = group_from_extension(ext)
        assert b0_order(G, p).invariants == b0_class2(ext).invariants


def test_group_from_extension():
    # Heisenberg group mod 3
    H = group_from_extension(WedgeExtension(3, 2, 1, [[1]]))
    assert H.n == 27 and center(H).order == 3 and derived_subgroup(H).order == 3
    assert max(H.element_orders()) == 3
    # lambda = 0 gives an abelian group
    assert group_from_extension(WedgeExtension(2, 3, 1, [[0, 0, 0]])).is_abelian()
    D8 = group_from_extension(WedgeExtension(2, 2, 1, [[1]]))
    assert D8.n == 8 and not D8.is_abelian()


@pytest.mark.parametrize("lam", [[[1, 0, 0]], [[1, 1, 0]], [[1, 1, 1]], [[1, 0, 0], [0, 1, 0]], [[1, 0, 0], [0, 1, 0], [0, 0, 1]]])
def test_round_trip_for_surjective_lambda(lam):
    ext = WedgeExtension(2, 3, len(lam), lam)
    back = as_class2_extension(group_from_extension(ext))
    assert (back.r, back.s) == (ext.r, ext.s)
    assert b0_class2(back).invariants == b0_class2(ext).invariants


def test_exhaustive_count_and_budget():
    assert sum(1 for _ in all_extensions(2, 3, 2)) == 64
    with pytest.raises(TooLarge):
        decomposables_in_s(WedgeExtension(3, 11, 1, np.zeros((1, 55))))
    with pytest.raises(BadParams):
        WedgeExtension.from_json({"p": 2})


def test_json_round_trip():
    ext = ut3f4_extension()
    back = WedgeExtension.from_json(ext.to_json())
    assert back.same_lambda(ext)


def test_search():
    out = search_nontrivial(2, 4, 2, seed=0, trials=200)
    assert out.found is None and out.tried == 200
    a = search_nontrivial(2, 4, 3, seed=0)
    b = search_nontrivial(2, 4, 3, seed=0)
    assert a.found is not None and a.found.same_lambda(b.found) and a.tried == b.tried
    assert a.result.invariants and a.to_json() == b.to_json()
