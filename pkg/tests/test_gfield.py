from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from equiwitt.gfield import FieldError, FieldSpec, arith, artin_schreier_solve, field_make, in_wp, sqrt


def brute_wp(f):
    return {f.mul(x, x) ^ x for x in range(f.q)}


def test_prime_field_defaults():
    f = field_make(1)
    assert f.modulus_bits == 0b10
    assert f.q == 2
    assert f.alpha == 1


def test_gf4_alpha_is_x():
    f = field_make(2, 0b111)
    assert f.alpha == 2


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError, match="reducible"):
        field_make(2, 0b101)


def test_wrong_degree_modulus_rejected():
    with pytest.raises(FieldError):
        field_make(3, 0b111)


@pytest.mark.parametrize("e", [0, 17])
def test_degree_out_of_range(e):
    with pytest.raises(FieldError):
        field_make(e)


def test_default_modulus_is_smallest_irreducible():
    assert field_make(2).modulus_bits == 0b111
    assert field_make(3).modulus_bits == 0b1011
    assert field_make(4).modulus_bits == 0b10011
    assert field_make(8).modulus_bits == 0b100011011


def test_gf4_arithmetic():
    f = field_make(2)
    assert arith(f, "mul", 2, 2) == 3
    assert arith(f, "inv", 2) == 3
    for a in range(4):
        assert arith(f, "add", a, a) == 0


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        field_make(3).inv(0)


def test_sqrt_small_values():
    for e in (1, 2, 5):
        f = field_make(e)
        assert sqrt(f, 0) == 0 and sqrt(f, 1) == 1
    assert sqrt(field_make(2), 2) == 3


def test_sqrt_of_x_in_gf8():
    f = field_make(3, 0b1011)
    r = sqrt(f, 0b10)
    assert f.mul(r, r) == 0b10
    # X^4 = X^2 + X modulo X^3 + X + 1, so X^2 is not the root; X^2 + X is
    assert r == 0b110


def test_in_wp_examples():
    assert not in_wp(field_make(1), 1)
    assert in_wp(field_make(2), 1)
    for e in range(1, 9):
        f = field_make(e)
        assert not in_wp(f, f.alpha)


def test_artin_schreier_examples():
    assert set(artin_schreier_solve(field_make(3), 0)) == {0, 1}
    assert set(artin_schreier_solve(field_make(2), 1)) == {2, 3}
    assert artin_schreier_solve(field_make(1), 1) is None


@pytest.mark.parametrize("e", range(1, 9))
def test_wp_is_index_two_and_matches_brute_force(e):
    f = field_make(e)
    wp = brute_wp(f)
    assert len(wp) == f.q // 2
    assert {a for a in range(f.q) if in_wp(f, a)} == wp


@pytest.mark.parametrize("e", range(1, 9))
def test_sqrt_exhaustive(e):
    f = field_make(e)
    for a in range(f.q):
        r = sqrt(f, a)
        assert f.mul(r, r) == a


@pytest.mark.parametrize("e", range(1, 5))
def test_alpha_coset_covers_field(e):
    f = field_make(e)
    wp = brute_wp(f)
    assert f.alpha not in wp
    assert wp | {f.alpha ^ w for w in wp} == set(range(f.q))


def test_wp_random_membership():
    rng = np.random.default_rng(1)
    for e in (3, 7, 11, 16):
        f = field_make(e)
        for a in f.random(rng, 250):
            a = int(a)
            assert in_wp(f, f.mul(a, a) ^ a)


@pytest.mark.parametrize("e", [1, 2, 3, 4, 6])
def test_artin_schreier_solutions_exhaustive(e):
    f = field_make(e)
    for c in range(f.q):
        sol = artin_schreier_solve(f, c)
        if in_wp(f, c):
            x0, x1 = sol
            assert x1 == x0 ^ 1
            assert f.mul(x0, x0) ^ x0 == c
        else:
            assert sol is None


@given(e=st.integers(1, 10), data=st.data())
def test_field_axioms(e, data):
    f = field_make(e)
    a, b, c = (data.draw(st.integers(0, f.q - 1)) for _ in range(3))
    assert f.mul(a, b) == f.mul(b, a)
    assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
    assert f.mul(a, b ^ c) == f.mul(a, b) ^ f.mul(a, c)
    if a:
        assert f.mul(a, f.inv(a)) == 1
    assert f.pow(a, f.q) == a


def test_vectorised_multiplication_agrees():
    rng = np.random.default_rng(0)
    for e in (2, 9, 16):
        f = field_make(e)
        a, b = f.random(rng, 200), f.random(rng, 200)
        assert [int(x) for x in f.vmul(a, b)] == [f.mul(int(x), int(y)) for x, y in zip(a, b)]


def test_serialisation_round_trip():
    f = field_make(5)
    assert FieldSpec.from_dict(f.to_dict()) == f
    assert f.to_dict() == {"e": 5, "modulus_bits": f.modulus_bits}
