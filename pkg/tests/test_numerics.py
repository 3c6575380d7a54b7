from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from mpmath import mpf, workprec

import oracles
from qpi import numerics as nm
from qpi.hypterm import parse
from qpi.identities import REGISTRY
from qpi.qseries import ProductSpec


@pytest.mark.parametrize("q", ["1/2", "-1/2", "7/10", "-1/4"])
@pytest.mark.parametrize("name", sorted(REGISTRY))
def test_identities_at_real_points(name, q):
    r = nm.eval_identity_numeric(name, q)
    assert r.best[1] < mpf(2) ** -192


def test_bauer_registered_gap_is_large():
    r = nm.eval_identity_numeric("bauer_q", "1/2")
    assert r.gap > mpf(1) / 10
    assert r.best[0] == "denominator_q2q2"


def test_more_precision_shrinks_the_gap():
    lo = nm.eval_identity_numeric("a1", "1/2", nm.FloatCtx(128)).gap
    hi = nm.eval_identity_numeric("a1", "1/2", nm.FloatCtx(512)).gap
    assert hi < lo * mpf(2) ** -300 or hi == 0


def test_sum_value_against_direct_evaluation():
    with workprec(256):
        q = mpf(3) / 10
        got = nm.sum_value(parse(str(REGISTRY["a1"].summand)), q, nm.FloatCtx())
        assert abs(got - oracles.a1_sum(q)) < mpf(10) ** -70


def test_product_value_against_direct_evaluation():
    ps = ProductSpec(((1, 1, 2, 1), (-1, 2, 3, -2)))
    with workprec(256):
        q = mpf(-2) / 5
        expected = oracles.poch_inf(q, q**2) / oracles.poch_inf(-q**2, q**3) ** 2
        assert abs(nm.product_value(ps, q) - expected) < mpf(10) ** -70


def test_parse_q():
    assert nm.parse_q("-3/4") == Fraction(-3, 4)
    for bad in ("0", "1", "-1", "5/4"):
        with pytest.raises(ValueError):
            nm.parse_q(bad)


def test_no_convergence():
    with pytest.raises(nm.NoConvergenceError):
        nm.sum_value(parse("1 * q^(n^2)"), mpf("0.999"), nm.FloatCtx(256, max_terms=5))


@pytest.mark.parametrize("name", sorted(nm.PI_SERIES))
def test_pi_series(name):
    r = nm.classical_pi_series(name)
    assert r.passed


def test_pi_series_reference_values():
    with workprec(256):
        assert nm.PI_SERIES["ram_2sqrt3pi"].reference() == 2 * mpmath.sqrt(3) / mpmath.pi


def test_plain_terms_against_closed_forms():
    # (1/2)_n^3 / n!^3 = (binom(2n, n) / 4^n)^3
    from math import comb
    for n in range(12):
        b = Fraction(comb(2 * n, n), 4**n)
        assert nm._ram_4pi(n) == (6 * n + 1) * b**3 / 4**n
        assert nm._bauer_2pi(n) == (-1) ** n * (4 * n + 1) * b**3
        ratio = nm._bauer_2pi(n + 1) / nm._bauer_2pi(n)
        assert ratio == nm._bauer_ratio(n)


def test_pairing_beats_plain_partial_sum():
    ctx = nm.FloatCtx(128)
    paired = nm.classical_pi_series("bauer_2pi", ctx, 2000).gap
    with workprec(128):
        t, total = mpf(1), mpf(0)
        for n in range(2000):
            total += t
            r = nm._bauer_ratio(n)
            t *= mpf(r.numerator) / r.denominator
        plain = abs(total - 2 / mpmath.pi)
    assert paired < plain / 100


def test_pi_series_guards():
    with pytest.raises(KeyError):
        nm.classical_pi_series("nosuch")
    with pytest.raises(ValueError):
        nm.classical_pi_series("ram_4pi", terms=1)
