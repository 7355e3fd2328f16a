import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import GF, Poly, symbols

from b0kit.errors import DegreeOutOfRange, EvenCharacteristic, FieldMismatch, NonPrime, NotDividing, OrderTooLarge
from b0kit.field import (
    FiniteField,
    field_arith,
    field_of_order,
    is_irreducible,
    make_field,
    primitive_root_of_unity,
    sum_of_two_squares,
)
from b0kit.numbers import prime_power

X = symbols("x")
FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (7, 1)]


def sympy_mul(f: FiniteField, a, b):
    """Independent multiplication through sympy polynomials."""
    pa = Poly(list(reversed(a.coeffs)), X, domain=GF(f.p))
    pb = Poly(list(reversed(b.coeffs)), X, domain=GF(f.p))
    m = Poly(list(reversed(f.irr)), X, domain=GF(f.p))
    r = (pa * pb).rem(m)
    cs = [int(c) % f.p for c in reversed(r.all_coeffs())]
    return tuple(cs + [0] * (f.e - len(cs)))


def test_prime_field_modulus():
    f = make_field(2, 1)
    assert f.irr == (0, 1) and f.q == 2


def test_small_moduli():
    assert make_field(2, 2).irr == (1, 1, 1)
    assert make_field(3, 2).irr == (1, 0, 1)


@pytest.mark.parametrize("p,e", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)])
def test_modulus_is_lex_first_irreducible(p, e):
    f = make_field(p, e)
    assert Poly(list(reversed(f.irr)), X, modulus=p).is_irreducible
    # nothing earlier in lexicographic order is irreducible
    for tail in itertools.product(range(p), repeat=e):
        if tuple(tail) == f.irr[:-1]:
            break
        assert not Poly(list(reversed(list(tail) + [1])), X, modulus=p).is_irreducible


@pytest.mark.parametrize("p,e", [(2, 3), (3, 2), (5, 3), (2, 5)])
def test_is_irreducible_agrees_with_sympy(p, e):
    for tail in itertools.product(range(p), repeat=e):
        poly = list(tail) + [1]
        assert is_irreducible(poly, p) == Poly(list(reversed(poly)), X, modulus=p).is_irreducible


def test_f4_generator_squared():
    f = make_field(2, 2)
    s = f.generator_s
    assert s * s == s + 1


def test_inverse_in_f3():
    f = make_field(3, 1)
    assert field_arith(f(2), None, "inv") == f(2)


@pytest.mark.parametrize("p,e", FIELDS)
def test_field_axioms_exhaustive(p, e):
    f = make_field(p, e)
    els = f.elements()
    one, zero = f.one, f.zero
    for a in els:
        assert a + zero == a and a * one == a
        assert a - a == zero
        if not a.is_zero():
            assert a * a.inverse() == one
    if f.q <= 27:
        for a, b in itertools.product(els, repeat=2):
            assert (a * b).coeffs == sympy_mul(f, a, b)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 10**6))
def test_ring_laws(pe, x, y, z):
    f = make_field(*pe)
    a, b, c = (f(list(f.coeffs(v % f.q))) for v in (x, y, z))
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    if not b.is_zero():
        assert (a / b) * b == a
    assert a ** (f.q - 1) == (f.zero if a.is_zero() else f.one)


def test_field_arith_dispatch():
    f = make_field(5, 1)
    a, b = f(3), f(4)
    assert field_arith(a, b, "add") == f(2)
    assert field_arith(a, b, "sub") == f(4)
    assert field_arith(a, b, "mul") == f(2)
    assert field_arith(a, b, "div") == f(2)
    assert field_arith(a, 3, "pow") == f(2)
    with pytest.raises(ValueError):
        field_arith(a, b, "xor")


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatch):
        field_arith(make_field(2, 2).one, make_field(2, 3).one, "div")


def test_division_by_zero():
    f = make_field(7, 1)
    with pytest.raises(ZeroDivisionError):
        f(3) / f.zero


def test_roots_of_unity_examples():
    f4 = make_field(2, 2)
    mu = primitive_root_of_unity(f4, 3)
    assert mu == f4.generator_s
    assert primitive_root_of_unity(make_field(7, 1), 1) == make_field(7, 1).one
    assert primitive_root_of_unity(make_field(5, 1), 4) == make_field(5, 1)(2)


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9, 13, 16, 25, 27, 49, 81, 121])
def test_root_orders(q):
    f = field_of_order(q)
    for d in range(1, q):
        if (q - 1) % d == 0:
            mu = primitive_root_of_unity(f, d)
            assert mu.order() == d
            # brute-force order
            k, x = 1, mu
            while x != f.one:
                x, k = x * mu, k + 1
            assert k == d


def test_root_requires_divisibility():
    with pytest.raises(NotDividing):
        primitive_root_of_unity(make_field(7, 1), 4)


def test_sum_of_two_squares_examples():
    f5 = make_field(5, 1)
    a, b = sum_of_two_squares(f5)
    assert a * a + b * b == f5(-1) and b.is_zero()
    f3 = make_field(3, 1)
    assert sum_of_two_squares(f3) == (f3(1), f3(1))
    f7 = make_field(7, 1)
    a, b = sum_of_two_squares(f7)
    assert a * a + b * b == f7(6)
    with pytest.raises(EvenCharacteristic):
        sum_of_two_squares(make_field(2, 3))


def test_bad_field_parameters():
    with pytest.raises(NonPrime):
        make_field(4, 1)
    with pytest.raises(DegreeOutOfRange):
        make_field(2, 0)
    with pytest.raises(OrderTooLarge):
        make_field(2, 21)
    assert make_field(2, 20).q == 2**20


def test_json_round_trip_and_custom_modulus():
    f = make_field(2, 3)
    assert FiniteField.from_json(f.to_json()) == f
    assert f.irr == (1, 0, 1, 1)
    g = FiniteField.from_json({"p": 2, "e": 3, "irr": [1, 1, 0, 1]})
    assert g.irr == (1, 1, 0, 1) and g != f
    x = g.generator_s
    assert x**3 == x + g.one
    with pytest.raises(FieldMismatch):
        FiniteField.from_json({"p": 2, "e": 2, "irr": [1, 0, 1]})


@pytest.mark.parametrize("q,pe", [(2, (2, 1)), (9, (3, 2)), (1024, (2, 10)), (343, (7, 3))])
def test_prime_power(q, pe):
    assert prime_power(q) == pe
