"""Exact polynomials and rational functions in q over the rationals.

A ``Poly`` is stored as a tuple of integer coefficients (lowest degree
first) together with a positive common denominator.  A ``RatFunc`` is a
reduced fraction of two ``Poly`` objects with a monic denominator.

Every denominator that shows up in q-hypergeometric work is a product of
cyclotomic polynomials and a power of q.  ``RatFunc`` keeps that
factorisation when it is known, which turns reduction into a handful of
exact divisions by individual cyclotomic factors instead of a general
polynomial gcd.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Iterable, Mapping

from qpi import kernels
from qpi.exactnum import divisors, factorize, mobius, totient

DEG_ZERO = -1  # degree of the zero polynomial


def _trim(c: list[int]) -> list[int]:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    del c[n:]
    return c


class Poly:
    """Polynomial in q with rational coefficients."""

    __slots__ = ("_c", "_d", "_hash")

    def __init__(self, coeffs: Iterable[Fraction | int] = ()):
        fr = [Fraction(x) for x in coeffs]
        den = 1
        for x in fr:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [x.numerator * (den // x.denominator) for x in fr]
        self._set(ints, den)

    def _set(self, ints: list[int], den: int) -> None:
        _trim(ints)
        if not ints:
            den = 1
        else:
            g = gcd(den, *ints)
            if g != 1:
                ints = [x // g for x in ints]
                den //= g
        self._c = tuple(ints)
        self._d = den
        self._hash = None

    @classmethod
    def from_ints(cls, ints: Iterable[int], den: int = 1) -> "Poly":
        p = cls.__new__(cls)
        if den <= 0:
            raise ValueError("denominator must be positive")
        p._set(list(ints), den)
        return p

    @classmethod
    def monomial(cls, deg: int, coeff: Fraction | int = 1) -> "Poly":
        if deg < 0:
            raise ValueError("negative degree")
        coeff = Fraction(coeff)
        return cls.from_ints([0] * deg + [coeff.numerator], coeff.denominator)

    # -- access ---------------------------------------------------------

    @property
    def int_coeffs(self) -> tuple[int, ...]:
        """Integer coefficients; the true coefficients are these over ``denom``."""
        return self._c

    @property
    def denom(self) -> int:
        return self._d

    @property
    def degree(self) -> int:
        return len(self._c) - 1 if self._c else DEG_ZERO

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self._c):
            return Fraction(self._c[i], self._d)
        return Fraction(0)

    def coefficients(self) -> dict[int, Fraction]:
        """Nonzero coefficients keyed by degree."""
        return {i: Fraction(c, self._d) for i, c in enumerate(self._c) if c}

    def lc(self) -> Fraction:
        return self[self.degree] if self._c else Fraction(0)

    def valuation(self) -> int | None:
        for i, c in enumerate(self._c):
            if c:
                return i
        return None

    def is_zero(self) -> bool:
        return not self._c

    def is_one(self) -> bool:
        return self._c == (1,) and self._d == 1

    def __bool__(self) -> bool:
        return bool(self._c)

    # -- arithmetic -----------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return Poly([x])
        return NotImplemented

    def __add__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._d * other._d // gcd(self._d, other._d)
        fa, fb = d // self._d, d // other._d
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b, fa, fb = b, a, fb, fa
        out = [x * fa for x in a]
        for i, y in enumerate(b):
            out[i] += y * fb
        return Poly.from_ints(out, d)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly.from_ints([-x for x in self._c], self._d)

    def __sub__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return Poly.from_ints([x * other.numerator for x in self._c], self._d * other.denominator)
        if not isinstance(other, Poly):
            return NotImplemented
        return Poly.from_ints(kernels.mul(list(self._c), list(other._c)), self._d * other._d)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly([1])
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def shift(self, k: int) -> "Poly":
        """Multiply by ``q**k`` (``k >= 0``)."""
        if k < 0:
            raise ValueError("negative shift")
        if not self._c or not k:
            return self
        return Poly.from_ints([0] * k + list(self._c), self._d)

    def reverse(self) -> "Poly":
        """``q**deg * p(1/q)``."""
        return Poly.from_ints(list(reversed(self._c)), self._d)

    def monic(self) -> "Poly":
        if not self._c:
            raise ZeroDivisionError("zero polynomial has no leading coefficient")
        return self * (1 / self.lc())

    def primitive(self) -> tuple[Fraction, "Poly"]:
        """Split off the rational content; the returned part has coprime integer coefficients."""
        if not self._c:
            return Fraction(0), self
        g = gcd(*self._c)
        if self._c[-1] < 0:
            g = -g
        return Fraction(g, self._d), Poly.from_ints([x // g for x in self._c])

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if not other._c:
            raise ZeroDivisionError("division by zero polynomial")
        if self.degree < other.degree:
            return Poly(), self
        lc = other.lc()
        if lc == 1 and other._d == 1:
            dd = other.degree
            terms = [(j, c) for j, c in enumerate(other._c[:-1]) if c]
            q, r = kernels.divmod_sparse(list(self._c), terms, dd)
            return Poly.from_ints(q, self._d), Poly.from_ints(r, self._d)
        # general case over Q; other = B / denom, so the quotient by B is scaled by denom
        B = other._c
        dd = len(B) - 1
        inv = Fraction(1, B[-1])
        r = [Fraction(x, self._d) for x in self._c]
        q = [Fraction(0)] * (len(r) - dd)
        for i in range(len(r) - 1, dd - 1, -1):
            c = r[i] * inv
            if c:
                q[i - dd] = c
                for j in range(dd):
                    if B[j]:
                        r[i - dd + j] -= c * B[j]
                r[i] = Fraction(0)
        return Poly(q) * other._d, Poly(r[:dd])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def __call__(self, x):
        acc = 0
        for c in reversed(self._c):
            acc = acc * x + c
        if isinstance(acc, int) or isinstance(acc, Fraction):
            return Fraction(acc, self._d) if self._d != 1 else Fraction(acc)
        return acc / self._d

    # -- comparison -----------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self._c == other._c and self._d == other._d

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._c, self._d))
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for i, c in enumerate(self._c):
            if not c:
                continue
            v = Fraction(c, self._d)
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            if not mono:
                s = str(abs(v))
            elif abs(v) == 1:
                s = mono
            else:
                s = f"{abs(v)}*{mono}"
            parts.append(("-" if v < 0 else "+", s))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {sgn} {s}" for sgn, s in parts[1:])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q (zero if both are zero)."""
    while b:
        a, b = b, a % b
        if b:
            b = b.primitive()[1]
    return a.monic() if a else a


def cyclotomic_factorization(p: Poly, max_degree: int = 64) -> tuple[int, dict[int, int]] | None:
    """``(a, {d: e})`` with ``p = q**a prod Phi_d**e``, or None.

    Only the part of ``p`` prime to q is searched, and only up to
    ``max_degree``; larger inputs return None without trying.
    """
    if not p or p.denom != 1 or p.lc() != 1:
        return None
    a = p.valuation()
    ints = list(p.int_coeffs[a:])
    deg = len(ints) - 1
    if deg > max_degree or abs(ints[0]) != 1:
        return None
    exps: dict[int, int] = {}
    d = 1
    while len(ints) > 1:
        if totient(d) <= len(ints) - 1:
            ints, k = divide_out_cyclotomic(ints, d, len(ints))
            if k:
                exps[d] = k
        elif d > 2 * deg * deg + 2:
            return None
        d += 1
    return (a, exps) if ints == [1] else None


ONE = Poly([1])
ZERO = Poly()
Q = Poly([0, 1])


# --------------------------------------------------------------------------
# cyclotomic polynomials


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> Poly:
    """Phi_n(q) obtained by dividing q^n - 1 by Phi_d for every proper divisor d."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    p = Poly.from_ints([-1] + [0] * (n - 1) + [1])
    for d in divisors(n)[:-1]:
        p = p.exact_div(cyclotomic(d))
    return p


@lru_cache(maxsize=None)
def _cyclo_terms(d: int) -> tuple[tuple[tuple[int, int], ...], int]:
    c = cyclotomic(d).int_coeffs
    return tuple((j, x) for j, x in enumerate(c[:-1]) if x), len(c) - 1


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def _root_of_unity_mod(d: int) -> tuple[int, int]:
    """A prime p = 1 (mod d) below 2**61 and an element of exact order d mod p."""
    k = ((1 << 61) - 1) // d
    while True:
        p = k * d + 1
        if _is_probable_prime(p):
            break
        k -= 1
    rng = random.Random(d)
    primes = list(factorize(d))
    while True:
        w = pow(rng.randrange(2, p - 1), (p - 1) // d, p)
        if all(pow(w, d // r, p) != 1 for r in primes):
            return p, w


def divide_out_cyclotomic(ints: list[int], d: int, limit: int) -> tuple[list[int], int]:
    """Divide the integer polynomial ``ints`` by Phi_d as often as possible, at most ``limit`` times.

    Returns the quotient and the number of factors removed.  A modular
    evaluation at a primitive d-th root of unity rejects non-divisors
    cheaply; every accepted division is still checked exactly.
    """
    if d == 1:
        count = 0
        while count < limit and ints:
            u = kernels.exact_div_binom(ints, 1, 1)
            if u is None:
                break
            ints = [-x for x in u]  # q - 1 = -(1 - q)
            count += 1
        return ints, count
    p, w = _root_of_unity_mod(d)
    terms, deg = _cyclo_terms(d)
    terms_l = list(terms)
    count = 0
    while count < limit and ints and kernels.eval_mod(ints, w, p) == 0:
        quot, rem = kernels.divmod_sparse(ints, terms_l, deg)
        if any(rem):
            break
        ints = _trim(quot)
        count += 1
    return ints, count


# --------------------------------------------------------------------------
# products of cyclotomic polynomials


def binomial_cyclotomic(s: int, c: int) -> tuple[int, dict[int, int]]:
    """Write ``1 - s*q**c`` (c >= 1, s = +-1) as ``unit * prod Phi_d**e``."""
    if c < 1:
        raise ValueError("binomial exponent must be positive")
    if s == 1:
        return -1, {d: 1 for d in divisors(c)}
    return 1, {d: 1 for d in divisors(2 * c) if c % d}


@lru_cache(maxsize=4096)
def _cyclo_power(d: int, e: int) -> tuple[int, ...]:
    if e == 1:
        return cyclotomic(d).int_coeffs
    h = _cyclo_power(d, e // 2)
    out = kernels.mul(list(h), list(h))
    if e % 2:
        out = kernels.mul(out, list(cyclotomic(d).int_coeffs))
    return tuple(out)


def expand_cyclotomic_product(exps: Mapping[int, int]) -> list[int]:
    """Integer coefficients of ``prod Phi_d**e`` for nonnegative exponents."""
    parts = [list(_cyclo_power(d, e)) for d, e in sorted(exps.items()) if e]
    if not parts:
        return [1]
    while len(parts) > 1:
        parts.sort(key=len)
        nxt = [kernels.mul(parts[i], parts[i + 1]) for i in range(0, len(parts) - 1, 2)]
        if len(parts) % 2:
            nxt.append(parts[-1])
        parts = nxt
    return parts[0]


class CycloMonomial:
    """``coeff * q**qpow * prod Phi_d(q)**exps[d]``, exponents of any sign.

    The zero value has ``coeff == 0`` and no factors.
    """

    __slots__ = ("coeff", "qpow", "exps")

    def __init__(self, coeff: Fraction | int = 1, qpow: int = 0, exps: Mapping[int, int] | None = None):
        self.coeff = Fraction(coeff)
        if not self.coeff:
            self.qpow, self.exps = 0, {}
        else:
            self.qpow = qpow
            self.exps = {d: e for d, e in (exps or {}).items() if e}

    @classmethod
    def binomial(cls, s: int, c: int) -> "CycloMonomial":
        """The factor ``1 - s*q**c`` for any integer c (possibly zero)."""
        if c == 0:
            return cls(1 - s)
        if c > 0:
            u, ex = binomial_cyclotomic(s, c)
            return cls(u, 0, ex)
        # 1 - s q^{-m} = -s q^{-m} (1 - s q^m)
        u, ex = binomial_cyclotomic(s, -c)
        return cls(-s * u, c, ex)

    def is_zero(self) -> bool:
        return not self.coeff

    def __mul__(self, other: "CycloMonomial") -> "CycloMonomial":
        if isinstance(other, (int, Fraction)):
            return CycloMonomial(self.coeff * other, self.qpow, self.exps)
        ex = dict(self.exps)
        for d, e in other.exps.items():
            ex[d] = ex.get(d, 0) + e
        return CycloMonomial(self.coeff * other.coeff, self.qpow + other.qpow, ex)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CycloMonomial":
        if e < 0:
            if not self.coeff:
                raise ZeroDivisionError("negative power of zero")
            return CycloMonomial(self.coeff**e, self.qpow * e, {d: x * e for d, x in self.exps.items()})
        if e == 0:
            return CycloMonomial(1)
        return CycloMonomial(self.coeff**e, self.qpow * e, {d: x * e for d, x in self.exps.items()})

    def inverse(self) -> "CycloMonomial":
        return self**-1

    def __truediv__(self, other: "CycloMonomial") -> "CycloMonomial":
        return self * other.inverse()

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloMonomial):
            return NotImplemented
        return (self.coeff, self.qpow, self.exps) == (other.coeff, other.qpow, other.exps)

    def __repr__(self) -> str:
        fs = "".join(f"*Phi{d}^{e}" for d, e in sorted(self.exps.items()))
        return f"CycloMonomial({self.coeff}*q^{self.qpow}{fs})"

    def to_ratfunc(self) -> "RatFunc":
        return RatFunc.from_cyclo(self)

    def qinv(self) -> "CycloMonomial":
        """Value at 1/q: Phi_d(1/q) = q^-phi(d) Phi_d(q) for d > 1, Phi_1(1/q) = -q^-1 Phi_1(q)."""
        coeff, qp = self.coeff, -self.qpow
        for d, e in self.exps.items():
            qp -= totient(d) * e
            if d == 1 and e % 2:
                coeff = -coeff
        return CycloMonomial(coeff, qp, self.exps)


# --------------------------------------------------------------------------
# rational functions


class RatFunc:
    """Reduced quotient ``num/den`` with ``den`` monic.

    ``_dfac`` optionally records ``den = q**a * prod Phi_d**e`` as
    ``(a, {d: e})``.
    """

    __slots__ = ("num", "den", "_dfac")

    def __init__(self, num: Poly | int | Fraction = 0, den: Poly | int | Fraction = 1):
        num = num if isinstance(num, Poly) else Poly([num])
        den = den if isinstance(den, Poly) else Poly([den])
        if not den:
            raise ZeroDivisionError("division by zero polynomial")
        if not num:
            self.num, self.den, self._dfac = ZERO, ONE, (0, {})
            return
        if den.degree == 0:
            self.num, self.den, self._dfac = num * (1 / den[0]), ONE, (0, {})
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        lc = den.lc()
        self.num = num * (1 / lc)
        self.den = den * (1 / lc)
        self._dfac = cyclotomic_factorization(self.den)

    @classmethod
    def _make(cls, num: Poly, den: Poly, dfac) -> "RatFunc":
        r = cls.__new__(cls)
        r.num, r.den, r._dfac = num, den, dfac
        return r

    @classmethod
    def from_cyclo(cls, m: CycloMonomial) -> "RatFunc":
        if m.is_zero():
            return cls()
        pos = {d: e for d, e in m.exps.items() if e > 0}
        neg = {d: -e for d, e in m.exps.items() if e < 0}
        num = expand_cyclotomic_product(pos)
        if m.qpow > 0:
            num = [0] * m.qpow + num
        c = m.coeff
        nump = Poly.from_ints([x * c.numerator for x in num], c.denominator)
        a = max(-m.qpow, 0)
        den = Poly.from_ints([0] * a + expand_cyclotomic_product(neg))
        return cls._make(nump, den, (a, neg))

    @classmethod
    def _reduce_factored(cls, ints: list[int], den_int: int, a: int, exps: dict[int, int]) -> "RatFunc":
        """Build the canonical form of ``(ints/den_int) / (q**a prod Phi_d**e)``."""
        _trim(ints)
        if not ints:
            return cls()
        v = 0
        while v < a and not ints[v]:
            v += 1
        if v:
            ints = ints[v:]
            a -= v
        ex = dict(exps)
        for d in sorted(ex):
            e = ex[d]
            if e <= 0:
                continue
            ints, k = divide_out_cyclotomic(ints, d, e)
            ex[d] = e - k
        ex = {d: e for d, e in ex.items() if e > 0}
        den = Poly.from_ints([0] * a + expand_cyclotomic_product(ex))
        return cls._make(Poly.from_ints(ints, den_int), den, (a, ex))

    @property
    def den_factors(self):
        """``(a, {d: e})`` with ``den = q**a prod Phi_d**e`` when known, else None."""
        return self._dfac

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    @staticmethod
    def _coerce(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction, Poly)):
            return RatFunc(x)
        if isinstance(x, CycloMonomial):
            return RatFunc.from_cyclo(x)
        return NotImplemented

    def __add__(self, other):
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self._dfac is not None and other._dfac is not None:
            return _sum_factored([(self.num, self._dfac), (other.num, other._dfac)])
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc._make(-self.num, self.den, self._dfac)

    def __sub__(self, other):
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return RatFunc()
        if self._dfac is not None and other._dfac is not None:
            a = self._dfac[0] + other._dfac[0]
            ex = dict(self._dfac[1])
            for d, e in other._dfac[1].items():
                ex[d] = ex.get(d, 0) + e
            p = self.num * other.num
            return RatFunc._reduce_factored(list(p.int_coeffs), p.denom, a, ex)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, e: int) -> "RatFunc":
        if e < 0:
            return self.inverse() ** (-e)
        out = RatFunc(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def qinv(self) -> "RatFunc":
        """The rational function ``f(1/q)``."""
        if not self.num:
            return self
        shift = self.den.degree - self.num.degree
        num, den = self.num.reverse(), self.den.reverse()
        if shift >= 0:
            return RatFunc(num.shift(shift), den)
        return RatFunc(num, den.shift(-shift))

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        return f"({self.num}) / ({self.den})"


def _sum_factored(items: list[tuple[Poly, tuple[int, dict[int, int]]]]) -> RatFunc:
    """Sum of ``num_i / den_i`` with every denominator given in cyclotomic form."""
    a = max(f[0] for _, f in items)
    lcm: dict[int, int] = {}
    for _, (_, ex) in items:
        for d, e in ex.items():
            if e > lcm.get(d, 0):
                lcm[d] = e
    den_all = 1
    for num, _ in items:
        den_all = den_all * num.denom // gcd(den_all, num.denom)
    total: list[int] = []
    for num, (ai, ex) in items:
        comp = {d: e - ex.get(d, 0) for d, e in lcm.items()}
        cof = expand_cyclotomic_product(comp)
        scale = den_all // num.denom
        prod = kernels.mul([x * scale for x in num.int_coeffs], cof)
        shift = a - ai
        if len(total) < len(prod) + shift:
            total.extend([0] * (len(prod) + shift - len(total)))
        for i, x in enumerate(prod):
            total[i + shift] += x
    return RatFunc._reduce_factored(total, den_all, a, lcm)


def sum_cyclo(terms: Iterable[CycloMonomial]) -> RatFunc:
    """Exact canonical sum of cyclotomic monomials."""
    items = []
    for m in terms:
        if m.is_zero():
            continue
        pos = {d: e for d, e in m.exps.items() if e > 0}
        neg = {d: -e for d, e in m.exps.items() if e < 0}
        num = expand_cyclotomic_product(pos)
        if m.qpow > 0:
            num = [0] * m.qpow + num
        c = m.coeff
        items.append((Poly.from_ints([x * c.numerator for x in num], c.denominator), (max(-m.qpow, 0), neg)))
    if not items:
        return RatFunc()
    if len(items) == 1:
        num, (a, neg) = items[0]
        return RatFunc._make(num, Poly.from_ints([0] * a + expand_cyclotomic_product(neg)), (a, neg))
    return _sum_factored(items)


def sum_ratfuncs(fs: Iterable[RatFunc]) -> RatFunc:
    """Sum many rational functions with one common-denominator pass when possible."""
    fs = [f for f in fs if f.num]
    if not fs:
        return RatFunc()
    if all(f._dfac is not None for f in fs):
        if len(fs) == 1:
            return fs[0]
        return _sum_factored([(f.num, f._dfac) for f in fs])
    return reduce(lambda x, y: x + y, fs)


# --------------------------------------------------------------------------
# q-numbers, q-Pochhammer symbols


def q_number(m: int) -> RatFunc:
    """[m]_q = (1 - q^m)/(1 - q) for any integer m."""
    if m == 0:
        return RatFunc()
    if m > 0:
        return RatFunc._make(Poly.from_ints([1] * m), ONE, (0, {}))
    # [-m] = -q^-m [m]
    return RatFunc.from_cyclo(q_number_cyclo(m))


def q_number_cyclo(m: int) -> CycloMonomial:
    if m == 0:
        return CycloMonomial(0)
    if m > 0:
        return CycloMonomial(1, 0, {d: 1 for d in divisors(m) if d > 1})
    return CycloMonomial(-1, m, {d: 1 for d in divisors(-m) if d > 1})


class _Infinite:
    """A q-Pochhammer symbol of negative length with a vanishing defining factor."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def reciprocal(self) -> RatFunc:
        return RatFunc()

    def __repr__(self) -> str:
        return "INFINITE"


INFINITE = _Infinite()


def poch_cyclo(sign: int, a: int, b: int, length: int) -> CycloMonomial | _Infinite:
    """(sign*q^a; q^b)_length as a cyclotomic monomial (or INFINITE)."""
    out = CycloMonomial(1)
    if length >= 0:
        for j in range(length):
            f = CycloMonomial.binomial(sign, a + j * b)
            if f.is_zero():
                return CycloMonomial(0)
            out = out * f
        return out
    for j in range(1, -length + 1):
        f = CycloMonomial.binomial(sign, a - j * b)
        if f.is_zero():
            return INFINITE
        out = out * f
    return out.inverse()


def q_pochhammer_poly(sign: int, a: int, b: int, length: int) -> RatFunc | _Infinite:
    """Finite q-Pochhammer symbol (sign*q^a; q^b)_length as an exact rational function."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    v = poch_cyclo(sign, a, b, length)
    if v is INFINITE:
        return INFINITE
    return RatFunc.from_cyclo(v)


def ratfunc_qinv_equal(f: RatFunc, g: RatFunc) -> bool:
    """True iff f(1/q) == g(q), decided by cross-multiplication."""
    if not f.num or not g.num:
        return not f.num and not g.num
    shift = f.den.degree - f.num.degree
    lhs = f.num.reverse() * g.den
    rhs = f.den.reverse() * g.num
    if shift >= 0:
        lhs = lhs.shift(shift)
    else:
        rhs = rhs.shift(-shift)
    return lhs == rhs
