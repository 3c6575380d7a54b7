from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from qpi.exactnum import divisors, mobius, totient
from qpi.qpoly import (
    INFINITE,
    CycloMonomial,
    Poly,
    RatFunc,
    binomial_cyclotomic,
    cyclotomic,
    divide_out_cyclotomic,
    expand_cyclotomic_product,
    poch_cyclo,
    poly_gcd,
    q_number,
    q_pochhammer_poly,
    ratfunc_qinv_equal,
    sum_cyclo,
    sum_ratfuncs,
)

coeff = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(coeff, max_size=7).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())
ratfuncs = st.builds(RatFunc, polys, nonzero_polys)


def _naive_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _binom(s: int, c: int) -> Poly:
    return Poly.from_ints([1] + [0] * (c - 1) + [-s])


# --------------------------------------------------------------------------
# Poly


@given(polys, polys, polys)
def test_poly_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Poly()
    assert a * 1 == a


@given(polys, nonzero_polys)
def test_poly_divmod(a, b):
    quo, rem = a.divmod(b)
    assert quo * b + rem == a
    assert rem.degree < b.degree


@given(nonzero_polys, nonzero_polys, nonzero_polys)
@settings(max_examples=50)
def test_gcd_finds_common_factor(a, b, c):
    g = poly_gcd(a * c, b * c)
    assert (a * c) % g == Poly() and (b * c) % g == Poly()
    assert (g % c.monic()).is_zero() or c.degree == 0


def test_poly_basics():
    p = Poly([Fraction(1, 2), 0, 3])
    assert p.degree == 2
    assert p.int_coeffs == (1, 0, 6) and p.denom == 2
    assert p(2) == Fraction(25, 2)
    assert p.valuation() == 0
    assert Poly().degree == -1
    assert Poly.monomial(3, 2).coefficients() == {3: Fraction(2)}
    assert (Poly.monomial(4) - 1).exact_div(Poly([-1, 1])) == Poly([1, 1, 1, 1])
    with pytest.raises(ArithmeticError):
        Poly([1, 1, 1]).exact_div(Poly([1, 1]))
    with pytest.raises(ValueError):
        Poly.from_ints([1], 0)


# --------------------------------------------------------------------------
# cyclotomic polynomials


def _mobius_cyclotomic(n: int) -> Poly:
    """Phi_n = prod_{d | n} (q^d - 1)^mu(n/d), built from the Mobius formula."""
    num, den = [1], [1]
    for d in divisors(n):
        f = [-1] + [0] * (d - 1) + [1]
        m = mobius(n // d)
        if m == 1:
            num = _naive_mul(num, f)
        elif m == -1:
            den = _naive_mul(den, f)
    return Poly.from_ints(num).exact_div(Poly.from_ints(den))


@pytest.mark.parametrize("n", range(1, 61))
def test_cyclotomic_against_mobius_formula(n):
    phi = cyclotomic(n)
    assert phi == _mobius_cyclotomic(n)
    assert phi.degree == totient(n)


def test_cyclotomic_known_values():
    assert cyclotomic(1) == Poly([-1, 1])
    assert cyclotomic(6) == Poly([1, -1, 1])
    assert cyclotomic(105).int_coeffs[7] == -2  # first coefficient outside {-1, 0, 1}
    with pytest.raises(ValueError):
        cyclotomic(0)


@given(st.integers(1, 40), st.sampled_from([1, -1]))
def test_binomial_factorization(c, s):
    unit, exps = binomial_cyclotomic(s, c)
    assert Poly.from_ints(expand_cyclotomic_product(exps)) * unit == _binom(s, c)


@given(st.dictionaries(st.integers(1, 30), st.integers(0, 3), max_size=4),
       st.lists(st.integers(-5, 5), min_size=1, max_size=6))
@settings(max_examples=60)
def test_divide_out_cyclotomic_counts_multiplicity(exps, cofactor):
    assume(any(cofactor))
    base = Poly.from_ints(cofactor)
    for d in range(1, 31):
        while not (base % cyclotomic(d)):
            base = base.exact_div(cyclotomic(d))
    full = Poly.from_ints(expand_cyclotomic_product(exps)) * base
    for d, e in exps.items():
        quot, got = divide_out_cyclotomic(list(full.int_coeffs), d, e + 5)
        assert got == e
        assert Poly.from_ints(quot) * cyclotomic(d) ** got == full


# --------------------------------------------------------------------------
# RatFunc


@given(ratfuncs, ratfuncs, ratfuncs)
@settings(max_examples=60)
def test_ratfunc_field_laws(a, b, c):
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a:
        assert a * a.inverse() == RatFunc(1)


@given(polys, nonzero_polys, coeff.filter(bool))
def test_ratfunc_canonical(num, den, scale):
    f = RatFunc(num, den)
    g = RatFunc(num * scale, den * scale)
    assert f == g and hash(f) == hash(g)
    if num:
        assert f.den.lc() == 1
        assert poly_gcd(f.num, f.den).degree == 0


@given(st.integers(-8, 8), st.dictionaries(st.integers(1, 12), st.integers(-3, 3), max_size=4),
       coeff.filter(bool))
def test_cyclo_monomial_to_ratfunc(qpow, exps, c):
    m = CycloMonomial(c, qpow, exps)
    expected = RatFunc(c)
    for d, e in exps.items():
        expected = expected * RatFunc(cyclotomic(d)) ** e
    expected = expected * RatFunc(Poly.monomial(qpow)) if qpow >= 0 else expected / RatFunc(Poly.monomial(-qpow))
    assert m.to_ratfunc() == expected
    assert m.qinv().to_ratfunc() == expected.qinv()


@given(st.lists(st.tuples(coeff, st.integers(-4, 4),
                          st.dictionaries(st.integers(1, 10), st.integers(-2, 2), max_size=3)), max_size=5))
@settings(max_examples=60)
def test_sum_cyclo_matches_naive_sum(items):
    monos = [CycloMonomial(c, a, e) for c, a, e in items]
    naive = RatFunc()
    for m in monos:
        naive = naive + m.to_ratfunc()
    assert sum_cyclo(monos) == naive
    assert sum_ratfuncs(m.to_ratfunc() for m in monos) == naive


@given(ratfuncs)
def test_qinv_is_an_involution(f):
    assert f.qinv().qinv() == f
    assert ratfunc_qinv_equal(f, f.qinv())


def test_qinv_equal_detects_difference():
    f = RatFunc(Poly([1, 2]), Poly([3, 0, 1]))
    assert ratfunc_qinv_equal(f, f.qinv())
    assert not ratfunc_qinv_equal(f, f)


# --------------------------------------------------------------------------
# q-numbers and Pochhammer symbols


@given(st.integers(-30, 30))
def test_q_number(m):
    expected = (RatFunc(1) - RatFunc(Poly.monomial(m))) / RatFunc(Poly([1, -1])) if m >= 0 else \
        (RatFunc(1) - RatFunc(1, Poly.monomial(-m))) / RatFunc(Poly([1, -1]))
    assert q_number(m) == expected


def _poch_naive(s: int, a: int, b: int, n: int) -> RatFunc:
    out = RatFunc(1)
    if n >= 0:
        for j in range(n):
            out = out * _unit(s, a + j * b)
    else:
        for j in range(1, -n + 1):
            out = out / _unit(s, a - j * b)
    return out


def _unit(s: int, e: int) -> RatFunc:
    return RatFunc(1) - s * (RatFunc(Poly.monomial(e)) if e >= 0 else RatFunc(1, Poly.monomial(-e)))


@given(st.sampled_from([1, -1]), st.integers(1, 6), st.integers(1, 4), st.integers(-6, 8))
def test_pochhammer_against_product(s, a, b, n):
    got = q_pochhammer_poly(s, a, b, n)
    if got is INFINITE:
        assert n < 0 and s == 1 and any(a - j * b == 0 for j in range(1, -n + 1))
    else:
        assert got == _poch_naive(s, a, b, n)


def test_pochhammer_edge_cases():
    assert q_pochhammer_poly(1, 0, 1, 3) == RatFunc()  # (1;q)_3 contains 1 - 1
    assert poch_cyclo(1, 2, 1, -2) is INFINITE        # needs 1/(1 - q^0)
    assert q_pochhammer_poly(-1, 0, 1, 1) == RatFunc(2)
    with pytest.raises(ValueError):
        q_pochhammer_poly(2, 1, 1, 1)
