"""Truncated power series in q with exact rational coefficients."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from qpi import kernels
from qpi.qpoly import Poly, RatFunc


class NonUnitSeriesError(ArithmeticError):
    pass


class TruncSeries:
    """Power series known exactly through degree ``order`` (inclusive).

    Coefficients are stored as integers over a common positive denominator.
    """

    __slots__ = ("order", "_c", "_d")

    def __init__(self, coeffs: Iterable[Fraction | int], order: int):
        fr = [Fraction(x) for x in list(coeffs)[: order + 1]]
        den = 1
        for x in fr:
            den = den * x.denominator // gcd(den, x.denominator)
        self._set([x.numerator * (den // x.denominator) for x in fr], den, order)

    def _set(self, ints: list[int], den: int, order: int) -> None:
        if order < 0:
            raise ValueError("order must be nonnegative")
        ints = list(ints[: order + 1])
        ints.extend([0] * (order + 1 - len(ints)))
        if den < 0:
            ints, den = [-x for x in ints], -den
        g = gcd(den, *ints)
        if g > 1:
            ints = [x // g for x in ints]
            den //= g
        self.order = order
        self._c = ints
        self._d = den

    @classmethod
    def from_ints(cls, ints: Sequence[int], order: int, den: int = 1) -> "TruncSeries":
        s = cls.__new__(cls)
        s._set(list(ints), den, order)
        return s

    @classmethod
    def zero(cls, order: int) -> "TruncSeries":
        return cls.from_ints([], order)

    @classmethod
    def one(cls, order: int) -> "TruncSeries":
        return cls.from_ints([1], order)

    @classmethod
    def from_poly(cls, p: Poly, order: int) -> "TruncSeries":
        return cls.from_ints(p.int_coeffs, order, p.denom)

    @property
    def int_coeffs(self) -> list[int]:
        return list(self._c)

    @property
    def denom(self) -> int:
        return self._d

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i <= self.order:
            return Fraction(self._c[i], self._d)
        if i > self.order:
            raise IndexError(f"degree {i} beyond truncation order {self.order}")
        return Fraction(0)

    def coeffs(self) -> list[Fraction]:
        return [Fraction(x, self._d) for x in self._c]

    def valuation(self) -> int | None:
        for i, x in enumerate(self._c):
            if x:
                return i
        return None

    def is_zero(self) -> bool:
        return not any(self._c)

    def truncate(self, m: int) -> "TruncSeries":
        if m > self.order:
            raise ValueError("cannot raise truncation order")
        return TruncSeries.from_ints(self._c[: m + 1], m, self._d)

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by ``q**k``, k >= 0."""
        if k < 0:
            raise ValueError("negative shift leaves the power-series ring")
        return TruncSeries.from_ints([0] * k + self._c, self.order, self._d)

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return TruncSeries([other], self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = min(self.order, other.order)
        d = self._d * other._d // gcd(self._d, other._d)
        fa, fb = d // self._d, d // other._d
        return TruncSeries.from_ints([self._c[i] * fa + other._c[i] * fb for i in range(n + 1)], n, d)

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries.from_ints([-x for x in self._c], self.order, self._d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return TruncSeries.from_ints([x * other.numerator for x in self._c], self.order,
                                         self._d * other.denominator)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return TruncSeries.from_ints(kernels.mul_trunc(self._c, other._c, n + 1), n, self._d * other._d)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "TruncSeries":
        if e < 0:
            return series_invert(self) ** (-e)
        out = TruncSeries.one(self.order)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * series_invert(other)

    def mul_binomial(self, c: int, s: int, power: int = 1) -> "TruncSeries":
        """Multiply by ``(1 - s*q**c)**power`` for c >= 1, any integer power."""
        if c < 1:
            raise ValueError("binomial exponent must be positive")
        ints = self._c
        n = self.order + 1
        if power >= 0:
            for _ in range(power):
                ints = kernels.mul_binom(ints, c, s, n)
        else:
            for _ in range(-power):
                ints = kernels.div_binom(ints, c, s, n)
        return TruncSeries.from_ints(ints, self.order, self._d)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and self._c == other._c and self._d == other._d

    def __repr__(self) -> str:
        return f"TruncSeries({self}, order={self.order})"

    def __str__(self) -> str:
        p = Poly.from_ints(self._c, self._d)
        return f"{p} + O(q^{self.order + 1})"


def first_mismatch(a: TruncSeries, b: TruncSeries) -> int | None:
    """Smallest degree where the two series differ, up to the common order."""
    n = min(a.order, b.order)
    for i in range(n + 1):
        if a._c[i] * b._d != b._c[i] * a._d:
            return i
    return None


def series_invert(s: TruncSeries) -> TruncSeries:
    """Multiplicative inverse through the same order."""
    c0 = s._c[0]
    if not c0:
        raise NonUnitSeriesError("non-unit series: constant term is 0")
    n = s.order
    a = s._c
    if c0 in (1, -1):
        # integer recurrence t_i = -c0 * sum_{j>=1} a_j t_{i-j}
        t = [c0] + [0] * n
        for i in range(1, n + 1):
            acc = 0
            for j in range(1, min(i, len(a) - 1) + 1):
                if a[j]:
                    acc += a[j] * t[i - j]
            t[i] = -c0 * acc
        return TruncSeries.from_ints(t, n, 1) * Fraction(s._d)
    # 1/A has coefficients U_i / c0^(i+1) with integer U_i
    u = [1] + [0] * n
    for i in range(1, n + 1):
        acc = 0
        for j in range(1, min(i, len(a) - 1) + 1):
            if a[j]:
                acc += a[j] * u[i - j] * c0 ** (j - 1)
        u[i] = -acc
    ints = [u[i] * c0 ** (n - i) for i in range(n + 1)]
    return TruncSeries.from_ints(ints, n, c0 ** (n + 1)) * Fraction(s._d)


def infinite_poch_series(sign: int, a: int, b: int, order: int) -> TruncSeries:
    """(sign*q^a; q^b)_inf truncated at ``order``; a >= 1."""
    if a < 1 or b < 1:
        raise ValueError("infinite product needs a >= 1 and b >= 1")
    ints = [1] + [0] * order
    e = a
    while e <= order:
        ints = kernels.mul_binom(ints, e, sign, order + 1)
        e += b
    return TruncSeries.from_ints(ints, order)


def ratfunc_series(f: RatFunc, order: int) -> TruncSeries:
    """Power-series expansion of a rational function regular at q = 0."""
    den = f.den
    if not den[0]:
        raise NonUnitSeriesError("rational function has a pole at q = 0")
    return TruncSeries.from_poly(f.num, order) * series_invert(TruncSeries.from_poly(den, order))


@dataclass(frozen=True)
class ProductSpec:
    """``prefactor * q**qshift * prod (sign*q^a; q^b)_inf ** e``."""

    factors: tuple[tuple[int, int, int, int], ...]
    prefactor: RatFunc = field(default_factory=lambda: RatFunc(1))
    qshift: int = 0

    def __post_init__(self):
        for sign, a, b, e in self.factors:
            if sign not in (1, -1) or a < 1 or b < 1:
                raise ValueError(f"bad infinite-product factor {(sign, a, b, e)}")
        if self.qshift < 0:
            raise ValueError("qshift must be nonnegative")
        if not self.prefactor.num[0] or not self.prefactor.den[0]:
            raise ValueError("prefactor must have a unit constant term")

    def describe(self) -> str:
        parts = []
        if self.prefactor != RatFunc(1):
            parts.append(f"[{self.prefactor}]")
        if self.qshift:
            parts.append(f"q^{self.qshift}")
        for sign, a, b, e in self.factors:
            base = f"{'-' if sign < 0 else ''}q^{a}"
            parts.append(f"({base};q^{b})_inf" + (f"^{e}" if e != 1 else ""))
        return " * ".join(parts) or "1"


def product_spec_series(ps: ProductSpec, order: int) -> TruncSeries:
    out = ratfunc_series(ps.prefactor, order)
    for sign, a, b, e in ps.factors:
        if e == 0:
            continue
        # each infinite product is a string of binomial factors
        ints = out.int_coeffs
        n = order + 1
        x = a
        while x <= order:
            for _ in range(abs(e)):
                ints = kernels.mul_binom(ints, x, sign, n) if e > 0 else kernels.div_binom(ints, x, sign, n)
            x += b
        out = TruncSeries.from_ints(ints, order, out.denom)
    return out.shift(ps.qshift) if ps.qshift else out
