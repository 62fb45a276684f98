"""Field arithmetic tests: table consistency, algebraic laws, Frobenius."""

import random

import pytest

from psl3poly.gf import (FieldError, make_field, primitive_element,
                         primitive_cube_root)

FIELDS = [(5, 1), (7, 1), (2, 3), (3, 2), (5, 2)]


def test_make_field_rejects_bad_input():
    with pytest.raises(FieldError):
        make_field(6)
    with pytest.raises(FieldError):
        make_field(5, 0)
    with pytest.raises(FieldError):
        make_field(2, 21)


@pytest.mark.parametrize("p,n", FIELDS)
def test_modulus_is_monic_of_right_degree(p, n):
    spec = make_field(p, n)
    assert len(spec.modulus) == n + 1
    assert spec.modulus[-1] == 1
    assert spec.q == p ** n


def test_gf4_modulus_is_x2_x_1():
    assert make_field(2, 2).modulus == (1, 1, 1)


def test_gf8_modulus_prefers_smallest_encoding():
    # x^3 + x + 1 encodes below x^3 + x^2 + 1
    assert make_field(2, 3).modulus == (1, 1, 0, 1)


def test_gf9_modulus():
    assert make_field(3, 2).modulus == (1, 0, 1)


@pytest.mark.parametrize("p,n", FIELDS)
def test_field_laws_randomized(p, n):
    spec = make_field(p, n)
    rng = random.Random(10 * p + n)
    els = spec.elements()
    for _ in range(1000):
        a, b, c = (rng.choice(els) for _ in range(3))
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == spec.zero()
        if a:
            assert a * a.inv() == spec.one()


@pytest.mark.parametrize("p,n", FIELDS)
def test_frobenius_is_field_automorphism(p, n):
    spec = make_field(p, n)
    rng = random.Random(97 * p + n)
    els = spec.elements()
    for _ in range(300):
        a, b = rng.choice(els), rng.choice(els)
        k = rng.randrange(n)
        assert (a + b).frobenius(k) == a.frobenius(k) + b.frobenius(k)
        assert (a * b).frobenius(k) == a.frobenius(k) * b.frobenius(k)
        assert a.frobenius(n) == a


@pytest.mark.parametrize("p,n", FIELDS)
def test_multiplicative_orders_divide_group_order(p, n):
    spec = make_field(p, n)
    for a in spec.elements():
        if a:
            assert (spec.q - 1) % a.order() == 0
    assert primitive_element(spec).order() == spec.q - 1


@pytest.mark.parametrize("p,n", FIELDS)
def test_cube_predicate_counts(p, n):
    spec = make_field(p, n)
    cubes = {(a * a * a).val for a in spec.elements() if a}
    for a in spec.elements():
        if a:
            assert a.is_cube() == (a.val in cubes)
    expected = (spec.q - 1) // 3 if (spec.q - 1) % 3 == 0 else spec.q - 1
    assert len(cubes) == expected


def test_primitive_cube_root():
    assert primitive_cube_root(make_field(7)).order() == 3
    assert primitive_cube_root(make_field(5)) is None
    w = primitive_cube_root(make_field(5, 2))
    assert w is not None and w.order() == 3


def test_int_elements_are_prime_subfield_constants():
    spec = make_field(2, 2)
    assert spec.element(2).val == 0
    assert spec.element(3).val == 1
    assert spec.element([0, 1]).val == 2


def test_pow_and_inverse_consistency():
    spec = make_field(3, 2)
    for a in spec.elements():
        if a:
            assert a ** (spec.q - 2) == a.inv()
            assert a ** 0 == spec.one()
