import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix

from b0kit.catalog import dihedral
from b0kit.errors import DimensionMismatch, Singular
from b0kit.field import make_field, primitive_root_of_unity
from b0kit.groups import center
from b0kit.matrices import (
    EXCEPTIONAL_PAIRS,
    MatrixFq,
    mat_arith,
    projective_canonical,
    projective_special_linear_group,
    psl_params,
    special_linear_group,
    unitriangular_group,
)

FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3)]


def leibniz_det(A: MatrixFq):
    """Independent determinant by the permutation expansion."""
    F, n = A.field, A.n
    total = F.zero
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = F.one
        for i in range(n):
            term = term * A[i, perm[i]]
        total = total - term if inversions % 2 else total + term
    return total


@st.composite
def matrices(draw, n=None):
    p, e = draw(st.sampled_from(FIELDS))
    F = make_field(p, e)
    n = n or draw(st.integers(1, 4))
    vals = draw(st.lists(st.integers(0, F.q - 1), min_size=2 * n * n, max_size=2 * n * n))
    return MatrixFq(F, n, vals[: n * n]), MatrixFq(F, n, vals[n * n:])


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_det_matches_leibniz_and_is_multiplicative(AB):
    A, B = AB
    assert A.det() == leibniz_det(A)
    assert (A * B).det() == A.det() * B.det()


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_inverse_and_powers(AB):
    A, _ = AB
    if A.det().is_zero():
        with pytest.raises(Singular):
            A.inverse()
        return
    I = A.identity_like()
    assert A * A.inverse() == I and A.inverse() * A == I
    assert A**3 == A * A * A
    assert A**0 == I
    assert A ** -2 == (A.inverse()) ** 2


def test_det_prime_field_against_sympy():
    F = make_field(7, 1)
    rows = [[1, 2, 3], [4, 5, 6], [0, 1, 5]]
    A = MatrixFq.from_rows(F, rows)
    assert A.det().v == int(Matrix(rows).det()) % 7


def test_det_examples():
    F = make_field(2, 2)
    mu = primitive_root_of_unity(F, 3)
    assert MatrixFq.identity(F, 3).det() == F.one
    assert mat_arith(MatrixFq.diag(F, [mu, mu * mu, F.one]), None, "det") == mu**3
    G = make_field(7, 1)
    a, b = G(3), G(5)
    M = MatrixFq.from_rows(G, [[a, b], [b, -a]])
    assert M.det() == -(a * a) - b * b


def test_projective_canonical_examples():
    F = make_field(2, 2)
    mu = primitive_root_of_unity(F, 3)
    I = MatrixFq.identity(F, 3)
    assert projective_canonical(I) == I
    assert projective_canonical(MatrixFq.scalar(F, 3, mu)) == I
    with pytest.raises(Singular):
        MatrixFq(F, 2, [0, 0, 0, 0]).projective_canonical()


@settings(max_examples=100, deadline=None)
@given(matrices(n=3))
def test_projective_canonical_is_class_function(AB):
    A, _ = AB
    F = A.field
    if A.det().is_zero():
        return
    C = A.projective_canonical()
    assert C.projective_canonical() == C
    for lam in F.elements():
        if lam.is_zero():
            continue
        assert (A * lam).projective_canonical() == C


def test_permutation_and_elementary():
    F = make_field(3, 1)
    P = MatrixFq.permutation(F, [1, 2, 0])
    assert P[0, 1] == F.one and P[2, 0] == F.one
    assert P**3 == MatrixFq.identity(F, 3)
    E = MatrixFq.elementary(F, 3, 0, 2, 2)
    assert E[0, 2] == F(2) and E.det() == F.one
    with pytest.raises(DimensionMismatch):
        MatrixFq(F, 2, [1, 2, 3])
    with pytest.raises(DimensionMismatch):
        P * MatrixFq.identity(F, 2)


def test_json_round_trip():
    F = make_field(3, 2)
    A = MatrixFq(F, 2, [1, 4, 7, 2])
    assert MatrixFq.from_json(A.to_json()) == A


def test_psl_params_examples():
    p = psl_params(3, 4)
    assert (p.d, p.order, p.exceptional) == (3, 20160, True)
    p = psl_params(2, 5)
    assert (p.d, p.order, p.exceptional) == (2, 60, False)
    p = psl_params(2, 4)
    assert (p.d, p.order, p.exceptional) == (1, 60, True)
    assert set(EXCEPTIONAL_PAIRS) == {(2, 4), (2, 9), (3, 2), (3, 4), (4, 2)}
    with pytest.raises(ValueError):
        psl_params(2, 6)


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (2, 4), (2, 5), (2, 7), (3, 2), (2, 8), (2, 9), (2, 11)])
def test_psl_orders_match_formula(n, q):
    G = projective_special_linear_group(n, q)
    assert G.n == psl_params(n, q).order
    # PSL is centerless
    assert center(G).order == 1


@pytest.mark.parametrize("n,q", [(2, 3), (2, 5), (2, 7), (3, 2)])
def test_sl_orders(n, q):
    G = special_linear_group(n, q)
    prm = psl_params(n, q)
    assert G.n == prm.order * prm.d
    assert center(G).order == prm.d


def test_unitriangular_examples():
    assert unitriangular_group(make_field(2, 1), 4).n == 64
    assert unitriangular_group(make_field(2, 2), 3).n == 64
    U = unitriangular_group(make_field(2, 1), 3)
    D = dihedral(8)
    assert U.n == 8
    assert sorted(U.element_orders()) == sorted(D.element_orders())
    assert center(U).order == 2 and not U.is_abelian()
    labels = {U.label(i) for i in range(U.n)}
    assert {"1", "a_{1,2}", "a_{2,3}", "a_{1,3}"} <= labels
    with pytest.raises(DimensionMismatch):
        unitriangular_group(make_field(2, 1), 5)
