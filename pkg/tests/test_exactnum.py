from __future__ import annotations

from fractions import Fraction
from math import factorial, gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qpi.exactnum import (
    NonPIntegralError,
    coprime,
    divisors,
    factorize,
    is_prime,
    jacobi,
    kronecker_minus3,
    mobius,
    mod_prime_power_reduce,
    pochhammer_rational,
    totient,
)

SMALL_PRIMES = [p for p in range(3, 200) if all(p % d for d in range(2, p))]


def test_pochhammer_basics():
    assert pochhammer_rational(1, 5) == factorial(5)
    assert pochhammer_rational(Fraction(1, 2), 0) == 1
    assert pochhammer_rational(Fraction(1, 2), 3) == Fraction(15, 8)
    with pytest.raises(ValueError):
        pochhammer_rational(1, -1)


@given(st.fractions(max_denominator=50), st.integers(0, 12), st.integers(0, 12))
def test_pochhammer_splits(a, m, n):
    assert pochhammer_rational(a, m + n) == pochhammer_rational(a, m) * pochhammer_rational(a + m, n)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_jacobi_matches_euler_criterion(p):
    for a in range(-20, 21):
        expected = 0 if a % p == 0 else (1 if pow(a % p, (p - 1) // 2, p) == 1 else -1)
        assert jacobi(a, p) == expected


@given(st.integers(-500, 500), st.sampled_from(SMALL_PRIMES[:12]), st.sampled_from(SMALL_PRIMES[:12]))
def test_jacobi_multiplicative_in_modulus(a, p, r):
    assert jacobi(a, p * r) == jacobi(a, p) * jacobi(a, r)


def test_jacobi_rejects_even_modulus():
    with pytest.raises(ValueError):
        jacobi(3, 8)


def test_kronecker_minus3_is_the_mod3_character():
    for n in range(1, 200, 2):
        if n % 3:
            assert kronecker_minus3(n) == (1 if n % 3 == 1 else -1)
    with pytest.raises(ValueError):
        kronecker_minus3(9)


def test_mod_prime_power_reduce():
    assert mod_prime_power_reduce(Fraction(1, 2), 5, 3) == 63
    assert mod_prime_power_reduce(-5, 5, 3) == 120
    with pytest.raises(NonPIntegralError):
        mod_prime_power_reduce(Fraction(1, 5), 5, 2)


@given(st.fractions(max_denominator=10**6), st.sampled_from([5, 7, 11, 13]))
def test_mod_prime_power_reduce_is_a_residue(x, p):
    if x.denominator % p == 0:
        return
    r = mod_prime_power_reduce(x, p, 3)
    assert 0 <= r < p**3
    assert (x.numerator - r * x.denominator) % p**3 == 0


def test_integer_helpers():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert divisors(12) == (1, 2, 3, 4, 6, 12)
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert coprime(8, 15) and not coprime(6, 9)


@given(st.integers(1, 3000))
def test_totient_and_mobius_against_brute_force(n):
    assert totient(n) == sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)
    assert sum(mobius(d) for d in divisors(n)) == (1 if n == 1 else 0)
