"""Multiprecision evaluation of the identities at real q and of the q -> 1 series for 1/pi."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable

import mpmath

from qpi.exactnum import pochhammer_rational
from qpi.hypterm import TermExpr, normal_form
from qpi.identities import get as get_identity
from qpi.qpoly import Poly, RatFunc
from qpi.qseries import ProductSpec


class NoConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class FloatCtx:
    """Working precision in bits and the term budget for sums and products."""

    prec_bits: int = 256
    max_terms: int = 20000

    def threshold(self) -> mpmath.mpf:
        return mpmath.mpf(2) ** (-self.prec_bits + 8)


def _mpf(x: Fraction | int) -> mpmath.mpf:
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


def parse_q(text: str | Fraction) -> Fraction:
    q = Fraction(text)
    if q == 0 or abs(q) >= 1:
        raise ValueError(f"q must satisfy 0 < |q| < 1, got {q}")
    return q


# --------------------------------------------------------------------------
# identities at a real point


def term_value(t: TermExpr, n: int, q: mpmath.mpf) -> mpmath.mpf:
    total = mpmath.mpf(0)
    for atom in t.atoms:
        nf = normal_form(atom, n, 0)
        if not nf.coeff:
            continue
        v = _mpf(nf.coeff) * q**nf.qpow
        for (s, c), p in nf.binoms.items():
            v *= (1 - s * q**c) ** p
        total += v
    return total


def _poly_value(p: Poly, q: mpmath.mpf) -> mpmath.mpf:
    out = mpmath.mpf(0)
    for c in reversed(p.int_coeffs):
        out = out * q + c
    return out / p.denom


def ratfunc_value(f: RatFunc, q: mpmath.mpf) -> mpmath.mpf:
    return _poly_value(f.num, q) / _poly_value(f.den, q)


def product_value(ps: ProductSpec, q: mpmath.mpf) -> mpmath.mpf:
    out = ratfunc_value(ps.prefactor, q) * q**ps.qshift
    for s, a, b, e in ps.factors:
        out *= mpmath.qp(s * q**a, q**b) ** e
    return out


def sum_value(t: TermExpr, q: mpmath.mpf, ctx: FloatCtx) -> mpmath.mpf:
    """Partial sums until three consecutive terms fall below the threshold."""
    tol = ctx.threshold()
    total = mpmath.mpf(0)
    small = 0
    for n in range(ctx.max_terms):
        v = term_value(t, n, q)
        total += v
        small = small + 1 if abs(v) < tol * max(1, abs(total)) else 0
        if small >= 3:
            return total
    raise NoConvergenceError(f"no convergence within {ctx.max_terms} terms")


@dataclass
class NumericResult:
    name: str
    q: Fraction
    lhs: mpmath.mpf
    rhs: mpmath.mpf
    gap: mpmath.mpf
    candidate_gaps: dict[str, mpmath.mpf] = field(default_factory=dict)

    @property
    def best(self) -> tuple[str, mpmath.mpf]:
        return min(self.candidate_gaps.items(), key=lambda kv: kv[1])


def eval_identity_numeric(name: str, q: Fraction | str, ctx: FloatCtx = FloatCtx()) -> NumericResult:
    """Both sides of a registered identity at a rational q with 0 < |q| < 1.

    ``gap`` refers to the right-hand side as registered; ``candidate_gaps``
    covers every alternative right-hand side as well.
    """
    spec = get_identity(name)
    q = parse_q(q)
    with mpmath.workprec(ctx.prec_bits):
        x = _mpf(q)
        lhs = sum_value(spec.summand, x, ctx)
        gaps = {}
        rhs_registered = None
        for label, rhs_spec in spec.rhs_options().items():
            r = product_value(rhs_spec, x)
            gaps[label] = abs(lhs - r)
            if label == "registered":
                rhs_registered = r
        return NumericResult(name, q, +lhs, +rhs_registered, gaps["registered"], gaps)


# --------------------------------------------------------------------------
# classical series


def _half_cubed(n: int) -> Fraction:
    return pochhammer_rational(Fraction(1, 2), n) ** 3 / pochhammer_rational(1, n) ** 3


def _quarter_triple(n: int) -> Fraction:
    return (pochhammer_rational(Fraction(1, 4), n) * pochhammer_rational(Fraction(1, 2), n)
            * pochhammer_rational(Fraction(3, 4), n)) / pochhammer_rational(1, n) ** 3


def _ram_4pi(n: int) -> Fraction:
    return (6 * n + 1) * _half_cubed(n) / 4**n


def _ram_2sqrt2pi(n: int) -> Fraction:
    return (-1) ** n * (6 * n + 1) * _half_cubed(n) / 8**n


def _bauer_2pi(n: int) -> Fraction:
    return (-1) ** n * (4 * n + 1) * _half_cubed(n)


def _gui_8pi(n: int) -> Fraction:
    return (-1) ** n * (20 * n + 3) * _quarter_triple(n) / 4**n


def _ram_2sqrt3pi(n: int) -> Fraction:
    return (8 * n + 1) * _quarter_triple(n) / 9**n


def _q2limit_16pi(n: int) -> Fraction:
    b = Fraction(comb(6 * n, 3 * n) * comb(4 * n, 2 * n) * comb(2 * n, n), 2 ** (12 * n))
    return (-1) ** n * b * Fraction(576 * n**3 + 624 * n**2 + 190 * n + 15, (3 * n + 1) * (3 * n + 2))


def _q3limit_8sqrt2pi(n: int) -> Fraction:
    b = Fraction(comb(4 * n, 2 * n) ** 2 * comb(2 * n, n), 2 ** (12 * n))
    return b * Fraction(48 * n**2 + 32 * n + 3, 2 * n + 1)


@dataclass(frozen=True)
class PiSeries:
    name: str
    term: Callable[[int], Fraction]
    reference: Callable[[], mpmath.mpf]
    default_terms: int
    tolerance: float
    method: str  # "plain", "paired" (mean of consecutive partial sums) or "cvz"


PI_SERIES: dict[str, PiSeries] = {
    s.name: s
    for s in (
        PiSeries("ram_4pi", _ram_4pi, lambda: 4 / mpmath.pi, 200, 1e-40, "plain"),
        PiSeries("ram_2sqrt2pi", _ram_2sqrt2pi, lambda: 2 * mpmath.sqrt(2) / mpmath.pi, 200, 1e-40, "plain"),
        PiSeries("bauer_2pi", _bauer_2pi, lambda: 2 / mpmath.pi, 10000, 1e-3, "paired"),
        PiSeries("gui_8pi", _gui_8pi, lambda: 8 / mpmath.pi, 200, 1e-40, "plain"),
        PiSeries("ram_2sqrt3pi", _ram_2sqrt3pi, lambda: 2 * mpmath.sqrt(3) / mpmath.pi, 200, 1e-40, "plain"),
        # ratio -1: terms decay only like n^(-1/2), so the alternating sum is accelerated
        PiSeries("q2limit_16pi", _q2limit_16pi, lambda: 16 / mpmath.pi, 120, 1e-40, "cvz"),
        PiSeries("q3limit_8sqrt2pi", _q3limit_8sqrt2pi, lambda: 8 * mpmath.sqrt(2) / mpmath.pi, 200, 1e-40, "plain"),
    )
}


@dataclass
class PiResult:
    name: str
    terms: int
    value: mpmath.mpf
    reference: mpmath.mpf
    gap: mpmath.mpf
    tolerance: float
    method: str

    @property
    def passed(self) -> bool:
        return self.gap < self.tolerance


def classical_pi_series(name: str, ctx: FloatCtx = FloatCtx(), terms: int | None = None) -> PiResult:
    if name not in PI_SERIES:
        raise KeyError(f"unknown series {name!r}; known: {', '.join(PI_SERIES)}")
    ps = PI_SERIES[name]
    count = ps.default_terms if terms is None else terms
    if count < 2:
        raise ValueError("need at least two terms")
    with mpmath.workprec(ctx.prec_bits):
        vals = [_mpf(ps.term(n)) for n in range(count)] if ps.method != "paired" else None
        if ps.method == "plain":
            value = mpmath.fsum(vals)
        elif ps.method == "cvz":
            value, _ = mpmath.mp.cohen_alt().update(vals)
        else:
            value = _paired_sum(ps, count)
        ref = ps.reference()
        return PiResult(name, count, +value, +ref, abs(value - ref), ps.tolerance, ps.method)


def _bauer_ratio(n: int) -> Fraction:
    """t(n+1)/t(n) for the Bauer series."""
    return -Fraction(4 * n + 5, 4 * n + 1) * Fraction(2 * n + 1, 2 * n + 2) ** 3


_RATIOS: dict[str, Callable[[int], Fraction]] = {"bauer_2pi": _bauer_ratio}


def _paired_sum(ps: PiSeries, count: int) -> mpmath.mpf:
    """Mean of the last two partial sums of an alternating series.

    Terms follow their exact rational ratio, carried in working precision, so
    that 10^4 or more terms stay cheap.
    """
    ratio = _RATIOS[ps.name]
    t = _mpf(ps.term(0))
    total = prev = mpmath.mpf(0)
    for n in range(count):
        prev = total
        total += t
        t *= _mpf(ratio(n))
    return (prev + total) / 2
