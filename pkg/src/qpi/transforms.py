"""A quadratic and a cubic basic-hypergeometric transformation, checked at q-power parameters.

Parameters are written in the final variable q; the transformation itself is
taken in base Q = q**s. Both sides are returned as q**shift times the side,
with the smallest shift that makes both of them power series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from qpi.hypterm import (
    AffExpr,
    MalformedTermError,
    Poch,
    QuadExpr,
    TermAtom,
    TermExpr,
    UnitFactor,
    power_series_shift,
    sum_series,
    summation_range,
)
from qpi.qpoly import Poly, RatFunc
from qpi.qseries import ProductSpec, TruncSeries, first_mismatch, product_spec_series


class IllPosedSpecializationError(ValueError):
    pass


@dataclass(frozen=True)
class QParam:
    """``sign * q**exp``; ``exp`` may be any integer after products and quotients."""

    sign: int
    exp: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def __mul__(self, other: "QParam") -> "QParam":
        return QParam(self.sign * other.sign, self.exp + other.exp)

    def __truediv__(self, other: "QParam") -> "QParam":
        return QParam(self.sign * other.sign, self.exp - other.exp)

    def qpow(self, e: int) -> "QParam":
        return QParam(self.sign, self.exp + e)

    @classmethod
    def parse(cls, text: str) -> "QParam":
        t = text.strip().replace(" ", "")
        sign = 1
        if t.startswith("-"):
            sign, t = -1, t[1:]
        if t == "1":
            return cls(sign, 0)
        if t == "q":
            return cls(sign, 1)
        if t.startswith("q^"):
            return cls(sign, int(t[2:]))
        raise ValueError(f"cannot parse parameter {text!r}; expected [-]q^m")

    def __str__(self) -> str:
        body = "1" if self.exp == 0 else ("q" if self.exp == 1 else f"q^{self.exp}")
        return ("-" if self.sign < 0 else "") + body


INF = None  # the b -> infinity limit of the quadratic transformation


@dataclass(frozen=True)
class ParamSpec:
    """A specialization of one of the two transformations.

    ``kind`` is "quadratic" (uses a, d, b) or "cubic" (uses a, c).
    """

    kind: str
    a: QParam
    s: int = 1
    d: QParam | None = None
    b: QParam | None = INF
    c: QParam | None = None
    label: str = ""

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("base substitution needs s >= 1")
        for name in ("a", "d", "b", "c"):
            v = getattr(self, name)
            if v is not None and v.exp < 0:
                raise ValueError(f"parameter {name} must be sign*q^m with m >= 0")
        if self.kind == "quadratic":
            if self.d is None:
                raise ValueError("quadratic specialization needs d")
        elif self.kind == "cubic":
            if self.c is None:
                raise ValueError("cubic specialization needs c")
        else:
            raise ValueError(f"unknown transformation {self.kind!r}")

    def describe(self) -> str:
        if self.kind == "quadratic":
            b = "inf" if self.b is None else str(self.b)
            body = f"a={self.a}, d={self.d}, b={b}"
        else:
            body = f"a={self.a}, c={self.c}"
        return f"{self.kind}: q->q^{self.s}, {body}"

    def as_dict(self) -> dict:
        out = dict(kind=self.kind, s=self.s, a=str(self.a))
        if self.kind == "quadratic":
            out.update(d=str(self.d), b="inf" if self.b is None else str(self.b))
        else:
            out["c"] = str(self.c)
        return out


# --------------------------------------------------------------------------
# building the two sides

_N = AffExpr(1, 0, 0)
_2N = AffExpr(2, 0, 0)


def _poch(x: QParam, base: int, length: AffExpr, power: int) -> Poch:
    return Poch(x.sign, x.exp, base, length, power)


def _unit(x: QParam, n_coeff: int, power: int) -> UnitFactor:
    """``(1 - x q^(n_coeff*n)) ** power``."""
    return UnitFactor(x.sign, AffExpr(n_coeff, 0, x.exp), power)


@dataclass
class _Product:
    """coeff * q**qpow * prod (1 - s q^c)**p * prod (s q^a; q^b)_inf**e with a, c >= 1."""

    coeff: Fraction
    qpow: int
    binoms: list[tuple[int, int, int]]
    infinite: list[tuple[int, int, int, int]]

    @property
    def is_zero(self) -> bool:
        return not self.coeff

    def spec(self, shift: int) -> ProductSpec:
        pre = RatFunc(Poly([self.coeff]))
        for s, c, p in self.binoms:
            pre = pre * RatFunc(Poly.from_ints([1] + [0] * (c - 1) + [-s])) ** p
        return ProductSpec(tuple(self.infinite), pre, self.qpow + shift)


def _infinite_product(factors: list[tuple[QParam, int, int]]) -> _Product:
    """prod (x; q^base)_inf ** power, peeling off factors with nonpositive exponents."""
    out = _Product(Fraction(1), 0, [], [])
    for x, base, power in factors:
        e = x.exp
        while e <= 0:
            if e == 0:
                if x.sign == -1:
                    out.coeff *= Fraction(2) ** power
                elif power > 0:
                    out.coeff = Fraction(0)
                else:
                    raise IllPosedSpecializationError(f"infinite product ({x};q^{base}) in a denominator vanishes")
            else:
                # 1 - s q^e = -s q^e (1 - s q^-e)
                if power % 2 and x.sign == 1:
                    out.coeff = -out.coeff
                out.qpow += e * power
                out.binoms.append((x.sign, -e, power))
            e += base
        out.infinite.append((x.sign, e, base, power))
    return out


def quadratic_terms(p: ParamSpec) -> tuple[TermExpr, _Product]:
    """Summand (in n) and right-hand product of the quadratic transformation."""
    s, a, d, b = p.s, p.a, p.d, p.b
    Q = QParam(1, s)
    if a.exp == 0 and a.sign == 1:
        raise IllPosedSpecializationError("a = 1 makes 1 - a vanish")
    pochs = [
        _poch(a, s, _N, 1),
        _poch(d, s, _N, 1),
        _poch(Q / d, s, _N, 1),
        _poch(QParam(1, 2 * s), 2 * s, _N, -1),
        _poch(a * Q * Q / d, 2 * s, _N, -1),
        _poch(a * d * Q, 2 * s, _N, -1),
    ]
    units = [_unit(a, 3 * s, 1), UnitFactor(a.sign, AffExpr(0, 0, a.exp), -1)]
    # a^n Q^(n(n+1)/2) / b^n, or its b -> infinity limit with (b;Q^2)_n / b^n -> (-1)^n Q^(n(n-1))
    if b is None:
        sign = AffExpr() if a.sign == -1 else AffExpr(1, 0, 0)
        q_exp = QuadExpr(nn=s + 2 * s, n1=2 * a.exp + s - 2 * s, div=2)
    else:
        pochs.append(_poch(b, 2 * s, _N, 1))
        pochs.append(_poch(a * Q / b, s, _N, -1))
        sign = AffExpr(1, 0, 0) if a.sign * b.sign == -1 else AffExpr()
        q_exp = QuadExpr(nn=s, n1=s + 2 * (a.exp - b.exp), div=2)
    atom = TermAtom(Fraction(1), sign, q_exp, tuple(pochs), (), tuple(units))
    rhs_factors = [
        (a * Q, 2 * s, 1),
        (a * Q * Q, 2 * s, 1),
        (a * Q * Q / d, 2 * s, -1),
        (a * d * Q, 2 * s, -1),
    ]
    if b is not None:
        rhs_factors += [
            (a * d * Q / b, 2 * s, 1),
            (a * Q * Q / (b * d), 2 * s, 1),
            (a * Q / b, 2 * s, -1),
            (a * Q * Q / b, 2 * s, -1),
        ]
    return TermExpr((atom,)), _infinite_product(rhs_factors)


def cubic_terms(p: ParamSpec) -> tuple[TermExpr, _Product]:
    """Summand and right-hand product of the cubic transformation (its d -> 0 form)."""
    s, a, c = p.s, p.a, p.c
    Q = QParam(1, s)
    ac = a * c
    if ac.exp == 0 and ac.sign == 1:
        raise IllPosedSpecializationError("ac = 1 makes 1 - ac vanish")
    pochs = (
        _poch(a, s, _N, 1),
        _poch(Q / a, s, _N, 1),
        _poch(ac, s, _2N, 1),
        _poch(c.qpow(3 * s), 3 * s, _N, -1),
        _poch((a * ac).qpow(2 * s), 3 * s, _N, -1),
        _poch(Q, s, _2N, -1),
    )
    units = (_unit(ac, 4 * s, 1), UnitFactor(ac.sign, AffExpr(0, 0, ac.exp), -1))
    atom = TermAtom(Fraction(1), AffExpr(), QuadExpr(nn=s), pochs, (), units)
    rhs = _infinite_product([
        (ac.qpow(2 * s), 3 * s, 1),
        (ac.qpow(3 * s), 3 * s, 1),
        (a.qpow(s), 3 * s, 1),
        (QParam(1, 2 * s) / a, 3 * s, 1),
        (QParam(1, s), 3 * s, -1),
        (QParam(1, 2 * s), 3 * s, -1),
        ((a * ac).qpow(2 * s), 3 * s, -1),
        (c.qpow(3 * s), 3 * s, -1),
    ])
    return TermExpr((atom,)), rhs


@dataclass
class SidePair:
    lhs: TruncSeries
    rhs: TruncSeries
    shift: int

    @property
    def equal(self) -> bool:
        return first_mismatch(self.lhs, self.rhs) is None


def _both_sides(term: TermExpr, rhs: _Product, order: int) -> SidePair:
    try:
        summation_range(term, order)
        shift = power_series_shift(term)
    except MalformedTermError as exc:
        raise IllPosedSpecializationError(f"ill-posed specialization: {exc}") from exc
    except ValueError as exc:
        raise IllPosedSpecializationError(f"ill-posed specialization: {exc}") from exc
    if not rhs.is_zero:
        shift = max(shift, -rhs.qpow)
    try:
        lhs = sum_series(term, order, 0, shift)
    except MalformedTermError as exc:
        raise IllPosedSpecializationError(f"ill-posed specialization: {exc}") from exc
    right = TruncSeries.zero(order) if rhs.is_zero else product_spec_series(rhs.spec(shift), order)
    return SidePair(lhs, right, shift)


def quadratic_both_sides(p: ParamSpec, order: int) -> SidePair:
    if p.kind != "quadratic":
        raise ValueError("not a quadratic specialization")
    return _both_sides(*quadratic_terms(p), order)


def cubic_both_sides(p: ParamSpec, order: int) -> SidePair:
    if p.kind != "cubic":
        raise ValueError("not a cubic specialization")
    return _both_sides(*cubic_terms(p), order)


def both_sides(p: ParamSpec, order: int) -> SidePair:
    return quadratic_both_sides(p, order) if p.kind == "quadratic" else cubic_both_sides(p, order)


# --------------------------------------------------------------------------
# specializations

_q = QParam.parse


def quad(a: str, d: str, b: str | None, s: int = 2, label: str = "") -> ParamSpec:
    return ParamSpec("quadratic", _q(a), s, d=_q(d), b=None if b in (None, "inf") else _q(b), label=label)


def cubic(a: str, c: str, s: int = 1, label: str = "") -> ParamSpec:
    return ParamSpec("cubic", _q(a), s, c=_q(c), label=label)


#: specializations that give registered identities
IDENTITY_SPECIALIZATIONS: dict[str, ParamSpec] = {
    "a1": quad("q", "q", "q^2", 2, "a1"),
    "a11": quad("q", "q", "inf", 2, "a11"),
    "s4a": quad("q", "-q", "q^2", 2, "s4a"),
    "s4b": quad("q", "-q", "inf", 2, "s4b"),
    "q4": cubic("q", "1", 2, "q4"),
}

QUADRATIC_BATTERY: list[ParamSpec] = [
    quad("q", "q", "q^2", 2),
    quad("q", "-q", "q^2", 2),
    quad("q", "q", "inf", 2),
    quad("q", "-q", "inf", 2),
    quad("q^2", "q", "-q^3", 1),
    quad("-q", "q^2", "q", 1),
    quad("q", "-q^3", "-q^2", 1),
    quad("q^3", "-q", "inf", 1),
    quad("-q^2", "q^2", "q^5", 2),
    quad("q^2", "-q^3", "inf", 3),
    quad("q", "q^2", "q", 2),
    quad("-q", "-q", "q^2", 1),
    quad("-q", "q", "inf", 2),
    quad("q^3", "q^2", "q", 1),
    quad("q^3", "q", "inf", 2),
]

CUBIC_BATTERY: list[ParamSpec] = [
    cubic("q", "1", 2),
    cubic("q", "q", 1),
    cubic("q^3", "1", 1),
    cubic("-q", "q", 1),
    cubic("q^2", "q", 1),
    cubic("q", "-q^2", 1),
    cubic("-q^2", "-1", 2),
    cubic("q", "q^3", 2),
    cubic("q^4", "q", 1),
    cubic("-1", "q^2", 1),
    cubic("q^2", "-q", 3),
]

BATTERIES: dict[str, list[ParamSpec]] = {"quadratic": QUADRATIC_BATTERY, "cubic": CUBIC_BATTERY}
