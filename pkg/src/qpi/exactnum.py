"""Exact rationals and the elementary number theory the verifiers lean on."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

# Canonical arbitrary-precision rational: Fraction keeps lowest terms with a
# positive denominator after every operation.
Rational = Fraction


class NonPIntegralError(ValueError):
    """Raised when reducing a rational whose denominator is divisible by p."""


def pochhammer_rational(a: Fraction | int, n: int) -> Fraction:
    """Rising factorial ``a (a+1) ... (a+n-1)``; 1 for ``n == 0``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    a = Fraction(a)
    out = Fraction(1)
    for j in range(n):
        out *= a + j
    return out


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol ``(a/n)`` for odd positive ``n`` via quadratic reciprocity."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("n must be odd and positive")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker_minus3(n: int) -> int:
    """The character ``(-3/n)`` for odd positive ``n`` coprime to 3."""
    if n <= 0 or n % 2 == 0 or n % 3 == 0:
        raise ValueError(f"kronecker_minus3 needs odd n > 0 coprime to 3, got {n}")
    return jacobi(-3, n)


def mod_prime_power_reduce(x: Fraction | int, p: int, e: int) -> int:
    """Image of ``x`` in ``Z/p^e``; ``x`` must be p-integral."""
    x = Fraction(x)
    if x.denominator % p == 0:
        raise NonPIntegralError(f"non-p-integral: {x} at p={p}")
    m = p**e
    return x.numerator * pow(x.denominator, -1, m) % m


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return tuple(sorted(set(small + [n // d for d in small])))


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    out = n
    for p in factorize(n):
        out = out // p * (p - 1)
    return out


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1
