"""Direct mpmath evaluations used as independent oracles.

Nothing here goes through the package's term language or series code:
every product is multiplied out factor by factor at a real q.
"""

from __future__ import annotations

from mpmath import mp, mpf


def poch(x, b, n: int):
    out = mpf(1)
    for j in range(n):
        out *= 1 - x * b**j
    return out


def poch_inf(x, b):
    out = mpf(1)
    j = 0
    eps = mpf(2) ** (-mp.prec - 20)
    while True:
        t = x * b**j
        if abs(t) < eps and j > 5:
            return out
        out *= 1 - t
        j += 1


def qint(m: int, q):
    return (1 - q**m) / (1 - q)


def quadratic_sides(q, s: int, a, d, b, terms: int = 400):
    """Both sides of the quadratic transformation in base Q = q^s; b=None is the b -> oo limit."""
    Q = q**s
    lhs = mpf(0)
    for n in range(terms):
        t = (poch(a, Q, n) * (1 - a * Q ** (3 * n)) * poch(d, Q, n) * poch(Q / d, Q, n)
             / (poch(Q**2, Q**2, n) * (1 - a) * poch(a * Q**2 / d, Q**2, n) * poch(a * d * Q, Q**2, n))
             * a**n * Q ** (n * (n + 1) // 2))
        if b is None:
            t *= (-1) ** n * Q ** (n * (n - 1))
        else:
            t *= poch(b, Q**2, n) / (poch(a * Q / b, Q, n) * b**n)
        lhs += t
    if b is None:
        rhs = (poch_inf(a * Q, Q**2) * poch_inf(a * Q**2, Q**2)
               / (poch_inf(a * Q**2 / d, Q**2) * poch_inf(a * d * Q, Q**2)))
    else:
        rhs = (poch_inf(a * Q, Q**2) * poch_inf(a * Q**2, Q**2) * poch_inf(a * d * Q / b, Q**2)
               * poch_inf(a * Q**2 / (b * d), Q**2)
               / (poch_inf(a * Q / b, Q**2) * poch_inf(a * Q**2 / b, Q**2)
                  * poch_inf(a * Q**2 / d, Q**2) * poch_inf(a * d * Q, Q**2)))
    return lhs, rhs


def cubic_sides(q, s: int, a, c, terms: int = 400):
    Q = q**s
    lhs = mpf(0)
    for n in range(terms):
        lhs += ((1 - a * c * Q ** (4 * n)) * poch(a, Q, n) * poch(Q / a, Q, n) * poch(a * c, Q, 2 * n)
                * Q ** (n * n)
                / ((1 - a * c) * poch(c * Q**3, Q**3, n) * poch(a * a * c * Q**2, Q**3, n)
                   * poch(Q, Q, 2 * n)))
    rhs = (poch_inf(a * c * Q**2, Q**3) * poch_inf(a * c * Q**3, Q**3) * poch_inf(a * Q, Q**3)
           * poch_inf(Q**2 / a, Q**3)
           / (poch_inf(Q, Q**3) * poch_inf(Q**2, Q**3) * poch_inf(a * a * c * Q**2, Q**3)
              * poch_inf(c * Q**3, Q**3)))
    return lhs, rhs


def a1_sum(q, terms: int = 200):
    return sum(q ** (n * n) * poch(q, q**2, n) ** 2 * poch(q**2, q**4, n) / poch(q**4, q**4, n) ** 3
               * qint(6 * n + 1, q) for n in range(terms))


def a1_product(q):
    return (1 + q) * poch_inf(q**2, q**4) * poch_inf(q**6, q**4) / poch_inf(q**4, q**4) ** 2


def bauer_sum(q, terms: int = 200):
    return sum((-1) ** n * q ** (n * n) * poch(q, q**2, n) ** 3 / poch(q**2, q**2, n) ** 3
               * qint(4 * n + 1, q) for n in range(terms))


def bauer_registered_product(q):
    return poch_inf(q, q**2) * poch_inf(q**3, q**2) / poch_inf(q, q**2) ** 2


def bauer_q2q2_product(q):
    return poch_inf(q, q**2) * poch_inf(q**3, q**2) / poch_inf(q**2, q**2) ** 2


def series_value(coeffs, q):
    out = mpf(0)
    for c in reversed(coeffs):
        out = out * q + mpf(c.numerator) / c.denominator
    return out
