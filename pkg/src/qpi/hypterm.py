"""Symbolic q-hypergeometric terms in two integer indices n and k.

A ``TermAtom`` is a product of

* a rational constant and a sign ``(-1)**signExp``,
* a power ``q**qExp`` with ``qExp`` quadratic in (n, k),
* q-Pochhammer symbols ``(sign*q^a; q^b)_L`` with affine length L,
* q-numbers ``[m]`` with affine argument m,
* binomials ``(1 - sign*q^x)`` with affine exponent x,

each raised to an integer power.  A ``TermExpr`` is a sum of atoms.

Text form (stable, round-trippable), one atom::

    3/2 * (-1)^(n+k) * q^(n^2+2nk-k^2) * (q;q^2)_(n+k)^2 * (-q^4;q^4)_(n)^-2 * [6n+1] * (1+q^(4n+2))^-1

Atoms of a term are joined with `` + ``.  Affine and quadratic forms never
contain spaces, so the separators are unambiguous.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

from qpi.qpoly import CycloMonomial, RatFunc, binomial_cyclotomic, sum_cyclo
from qpi.qseries import TruncSeries
from qpi import kernels


class MalformedTermError(ZeroDivisionError):
    """A denominator vanished outside the INFINITE-Pochhammer convention."""


class NonUnitDenominatorError(ArithmeticError):
    pass


# --------------------------------------------------------------------------
# affine and quadratic index forms

_TERM_RE = re.compile(r"([+-]?)(\d*)(n\^2|k\^2|nk|n|k|)")


def _parse_poly_terms(text: str) -> dict[str, int]:
    text = text.replace(" ", "")
    if text in ("", "0"):
        return {}
    out: dict[str, int] = {}
    pos = 0
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse index form {text!r}")
        sgn, digits, mono = m.groups()
        if not digits and not mono:
            raise ValueError(f"cannot parse index form {text!r}")
        c = int(digits) if digits else 1
        if sgn == "-":
            c = -c
        out[mono] = out.get(mono, 0) + c
        pos = m.end()
    return out


def _format_terms(items: list[tuple[int, str]]) -> str:
    s = ""
    for c, mono in items:
        if not c:
            continue
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
        s += ("-" if c < 0 else ("+" if s else "")) + body
    return s or "0"


@dataclass(frozen=True)
class AffExpr:
    """``cn*n + ck*k + c0``."""

    cn: int = 0
    ck: int = 0
    c0: int = 0

    def __call__(self, n: int, k: int = 0) -> int:
        return self.cn * n + self.ck * k + self.c0

    @classmethod
    def parse(cls, text: str) -> "AffExpr":
        t = _parse_poly_terms(text)
        if set(t) - {"n", "k", ""}:
            raise ValueError(f"not affine: {text!r}")
        return cls(t.get("n", 0), t.get("k", 0), t.get("", 0))

    def substitute(self, n_to: "AffExpr", k_to: "AffExpr") -> "AffExpr":
        return AffExpr(
            self.cn * n_to.cn + self.ck * k_to.cn,
            self.cn * n_to.ck + self.ck * k_to.ck,
            self.cn * n_to.c0 + self.ck * k_to.c0 + self.c0,
        )

    def is_zero(self) -> bool:
        return not (self.cn or self.ck or self.c0)

    def __str__(self) -> str:
        return _format_terms([(self.cn, "n"), (self.ck, "k"), (self.c0, "")])


def aff(text: str | int) -> AffExpr:
    return AffExpr(0, 0, text) if isinstance(text, int) else AffExpr.parse(text)


@dataclass(frozen=True)
class QuadExpr:
    """``(nn*n^2 + nk*n*k + kk*k^2 + n1*n + k1*k + c) / div``; must evaluate to integers."""

    nn: int = 0
    nk: int = 0
    kk: int = 0
    n1: int = 0
    k1: int = 0
    c: int = 0
    div: int = 1

    def __post_init__(self):
        if self.div < 1:
            raise ValueError("divisor must be positive")

    def __call__(self, n: int, k: int = 0) -> int:
        v = self.nn * n * n + self.nk * n * k + self.kk * k * k + self.n1 * n + self.k1 * k + self.c
        q, r = divmod(v, self.div)
        if r:
            raise ValueError(f"exponent {self} is not integral at n={n}, k={k}")
        return q

    @classmethod
    def parse(cls, text: str) -> "QuadExpr":
        text = text.replace(" ", "")
        div = 1
        m = re.fullmatch(r"\((.*)\)/(\d+)", text)
        if m:
            text, div = m.group(1), int(m.group(2))
        t = _parse_poly_terms(text)
        return cls(t.get("n^2", 0), t.get("nk", 0), t.get("k^2", 0), t.get("n", 0), t.get("k", 0),
                   t.get("", 0), div)

    @classmethod
    def from_aff(cls, a: AffExpr) -> "QuadExpr":
        return cls(0, 0, 0, a.cn, a.ck, a.c0)

    def __add__(self, other: "QuadExpr") -> "QuadExpr":
        d = self.div * other.div // math.gcd(self.div, other.div)
        fa, fb = d // self.div, d // other.div
        return QuadExpr(*(x * fa + y * fb for x, y in zip(self._coeffs(), other._coeffs())), div=d)._normal()

    def _coeffs(self) -> tuple[int, ...]:
        return (self.nn, self.nk, self.kk, self.n1, self.k1, self.c)

    def _normal(self) -> "QuadExpr":
        g = math.gcd(self.div, *self._coeffs())
        if g > 1:
            return QuadExpr(*(x // g for x in self._coeffs()), div=self.div // g)
        return self

    def substitute(self, n_to: AffExpr, k_to: AffExpr) -> "QuadExpr":
        a, b = n_to, k_to
        nn = self.nn * a.cn**2 + self.nk * a.cn * b.cn + self.kk * b.cn**2
        kk = self.nn * a.ck**2 + self.nk * a.ck * b.ck + self.kk * b.ck**2
        nk = (2 * self.nn * a.cn * a.ck + self.nk * (a.cn * b.ck + a.ck * b.cn)
              + 2 * self.kk * b.cn * b.ck)
        n1 = (2 * self.nn * a.cn * a.c0 + self.nk * (a.cn * b.c0 + a.c0 * b.cn)
              + 2 * self.kk * b.cn * b.c0 + self.n1 * a.cn + self.k1 * b.cn)
        k1 = (2 * self.nn * a.ck * a.c0 + self.nk * (a.ck * b.c0 + a.c0 * b.ck)
              + 2 * self.kk * b.ck * b.c0 + self.n1 * a.ck + self.k1 * b.ck)
        c = (self.nn * a.c0**2 + self.nk * a.c0 * b.c0 + self.kk * b.c0**2
             + self.n1 * a.c0 + self.k1 * b.c0 + self.c)
        return QuadExpr(nn, nk, kk, n1, k1, c, self.div)._normal()

    def is_zero(self) -> bool:
        return not any(self._coeffs())

    def __str__(self) -> str:
        body = _format_terms([(self.nn, "n^2"), (self.nk, "nk"), (self.kk, "k^2"),
                              (self.n1, "n"), (self.k1, "k"), (self.c, "")])
        return body if self.div == 1 else f"({body})/{self.div}"


def quad(text: str | int) -> QuadExpr:
    return QuadExpr(c=text) if isinstance(text, int) else QuadExpr.parse(text)


# --------------------------------------------------------------------------
# atoms


@dataclass(frozen=True)
class Poch:
    """``(sign*q^a; q^b)_length ** power``."""

    sign: int
    a: int
    b: int
    length: AffExpr
    power: int = 1

    def substitute(self, n_to: AffExpr, k_to: AffExpr) -> "Poch":
        return replace(self, length=self.length.substitute(n_to, k_to))


@dataclass(frozen=True)
class Bracket:
    """``[arg]_q ** power``."""

    arg: AffExpr
    power: int = 1

    def substitute(self, n_to: AffExpr, k_to: AffExpr) -> "Bracket":
        return replace(self, arg=self.arg.substitute(n_to, k_to))


@dataclass(frozen=True)
class UnitFactor:
    """``(1 - sign*q^exponent) ** power``."""

    sign: int
    exponent: AffExpr
    power: int = 1

    def substitute(self, n_to: AffExpr, k_to: AffExpr) -> "UnitFactor":
        return replace(self, exponent=self.exponent.substitute(n_to, k_to))


@dataclass(frozen=True)
class TermAtom:
    constant: Fraction = Fraction(1)
    sign_exp: AffExpr = AffExpr()
    q_exp: QuadExpr = QuadExpr()
    pochs: tuple[Poch, ...] = ()
    brackets: tuple[Bracket, ...] = ()
    units: tuple[UnitFactor, ...] = ()

    def substitute(self, n_to: AffExpr, k_to: AffExpr) -> "TermAtom":
        return TermAtom(
            self.constant,
            self.sign_exp.substitute(n_to, k_to),
            self.q_exp.substitute(n_to, k_to),
            tuple(p.substitute(n_to, k_to) for p in self.pochs),
            tuple(b.substitute(n_to, k_to) for b in self.brackets),
            tuple(u.substitute(n_to, k_to) for u in self.units),
        )

    def scale(self, c: Fraction | int) -> "TermAtom":
        return replace(self, constant=self.constant * c)

    def times_q(self, e: QuadExpr) -> "TermAtom":
        return replace(self, q_exp=self.q_exp + e)


@dataclass(frozen=True)
class TermExpr:
    atoms: tuple[TermAtom, ...] = field(default_factory=lambda: (TermAtom(Fraction(0)),))

    def __post_init__(self):
        if not self.atoms:
            raise ValueError("a term needs at least one atom")

    def __add__(self, other: "TermExpr") -> "TermExpr":
        return TermExpr(self.atoms + other.atoms)

    def substitute(self, n_to: AffExpr, k_to: AffExpr) -> "TermExpr":
        return TermExpr(tuple(a.substitute(n_to, k_to) for a in self.atoms))

    def scale(self, c: Fraction | int) -> "TermExpr":
        return TermExpr(tuple(a.scale(c) for a in self.atoms))

    def map_atoms(self, fn) -> "TermExpr":
        return TermExpr(tuple(fn(a) for a in self.atoms))

    def __str__(self) -> str:
        return serialize(self)


ZERO_TERM = TermExpr()
N_ID = AffExpr(1, 0, 0)
K_ID = AffExpr(0, 1, 0)


def tilde(t: TermExpr) -> TermExpr:
    """F(n, k) -> F(n, -k), by negating every k-coefficient."""
    return t.substitute(N_ID, AffExpr(0, -1, 0))


# --------------------------------------------------------------------------
# evaluation


@dataclass
class NormalForm:
    """``coeff * q**qpow * prod (1 - s q^c)**p`` with every c >= 1."""

    coeff: Fraction
    qpow: int
    binoms: Counter

    def to_cyclo(self) -> CycloMonomial:
        m = CycloMonomial(self.coeff, self.qpow)
        if m.is_zero():
            return m
        ex: dict[int, int] = {}
        unit = 1
        for (s, c), p in self.binoms.items():
            if not p:
                continue
            u, fac = _binom_cyclo(s, c)
            if p % 2 and u < 0:
                unit = -unit
            for d in fac:
                ex[d] = ex.get(d, 0) + p
        return CycloMonomial(self.coeff * unit, self.qpow, ex)

    def series(self, order: int, shift: int = 0) -> TruncSeries:
        val = self.qpow + shift
        if not self.coeff or val > order:
            return TruncSeries.zero(order)
        if val < 0:
            raise NonUnitDenominatorError(f"negative valuation {val}; multiply through by q^{-val}")
        size = order + 1 - val
        ints = [self.coeff.numerator] + [0] * (size - 1)
        # multiply first so divisions run on the final numerator length
        for (s, c), p in sorted(self.binoms.items(), key=lambda kv: -kv[1]):
            if c >= size:
                continue
            if p > 0:
                for _ in range(p):
                    ints = kernels.mul_binom(ints, c, s, size)
            else:
                for _ in range(-p):
                    ints = kernels.div_binom(ints, c, s, size)
        return TruncSeries.from_ints([0] * val + ints, order, self.coeff.denominator)


@lru_cache(maxsize=None)
def _binom_cyclo(s: int, c: int) -> tuple[int, tuple[int, ...]]:
    u, ex = binomial_cyclotomic(s, c)
    return u, tuple(ex)


def _factor(nf: NormalForm, s: int, x: int, pw: int) -> bool:
    """Multiply ``nf`` by ``(1 - s q^x)**pw``; True when the factor is zero."""
    if not pw:
        return False
    if x > 0:
        nf.binoms[(s, x)] += pw
    elif x == 0:
        if s == 1:
            if pw > 0:
                return True
            raise MalformedTermError("division by zero polynomial")
        nf.coeff *= Fraction(2) ** pw
    else:
        # 1 - s q^x = -s q^x (1 - s q^-x)
        if pw % 2 and s == 1:
            nf.coeff = -nf.coeff
        nf.qpow += x * pw
        nf.binoms[(s, -x)] += pw
    return False


def normal_form(atom: TermAtom, n: int, k: int) -> NormalForm:
    """Exact value of an atom at (n, k); a vanishing atom has coeff 0.

    Every factor is inspected even after a zero turns up, so that a zero
    over a zero is reported as malformed rather than as 0.
    """
    coeff = atom.constant
    if atom.sign_exp(n, k) % 2:
        coeff = -coeff
    nf = NormalForm(coeff, atom.q_exp(n, k), Counter())
    if not coeff:
        return nf
    zero = False
    for p in atom.pochs:
        length = p.length(n, k)
        if length >= 0:
            for j in range(length):
                zero |= _factor(nf, p.sign, p.a + j * p.b, p.power)
        else:
            # (x;q)_{-m} = 1 / prod_{j=1..m} (1 - x q^{-jb}); a zero factor makes it
            # INFINITE, and only its reciprocal (= 0) is admissible
            for j in range(1, -length + 1):
                x = p.a - j * p.b
                if x == 0 and p.sign == 1:
                    if p.power > 0:
                        raise MalformedTermError("positive power of an INFINITE q-Pochhammer symbol")
                    zero = True
                    continue
                _factor(nf, p.sign, x, -p.power)
    for b in atom.brackets:
        m = b.arg(n, k)
        if m == 0:
            if b.power < 0:
                raise MalformedTermError("division by zero polynomial: [0]")
            zero = True
            continue
        if m < 0:
            # [m] = -q^m [-m]
            if b.power % 2:
                nf.coeff = -nf.coeff
            nf.qpow += m * b.power
            m = -m
        nf.binoms[(1, m)] += b.power
        nf.binoms[(1, 1)] -= b.power
    for u in atom.units:
        zero |= _factor(nf, u.sign, u.exponent(n, k), u.power)
    if zero:
        return NormalForm(Fraction(0), 0, Counter())
    nf.binoms = Counter({key: p for key, p in nf.binoms.items() if p})
    return nf


def eval_cyclo(t: TermExpr, n: int, k: int = 0) -> list[CycloMonomial]:
    out = []
    for a in t.atoms:
        nf = normal_form(a, n, k)
        if nf.coeff:
            out.append(nf.to_cyclo())
    return out


def eval_ratfunc(t: TermExpr, n: int, k: int = 0) -> RatFunc:
    """Exact value at (n, k) as a canonical rational function in q."""
    return sum_cyclo(eval_cyclo(t, n, k))


def eval_series(t: TermExpr, n: int, k: int, order: int, shift: int = 0) -> TruncSeries:
    """q**shift times the term at (n, k), expanded through ``order``."""
    out = TruncSeries.zero(order)
    for a in t.atoms:
        nf = normal_form(a, n, k)
        if nf.coeff:
            out = out + nf.series(order, shift)
    return out


def valuation_bound(t: TermExpr, n: int, k: int = 0) -> float:
    """Lower bound for ord_q of the term at (n, k); exact for each nonzero atom.

    Returns ``math.inf`` when every atom vanishes.
    """
    vals = [nf.qpow for nf in (normal_form(a, n, k) for a in t.atoms) if nf.coeff]
    return min(vals) if vals else math.inf


# --------------------------------------------------------------------------
# summation cutoff


def _settled_from(a: AffExpr, k: int, need: int) -> int:
    """Smallest n0 >= 0 with |a(n, k)| >= need and a fixed sign for all n >= n0."""
    if a.cn == 0:
        return 0
    base = a.ck * k + a.c0
    if a.cn > 0:
        lo = need - base
        return max(0, -(-lo // a.cn))
    hi = -need - base  # a(n) <= -need
    return max(0, -(-hi // a.cn))


def _atom_tail(atom: TermAtom, k: int) -> tuple[int, tuple[int, int, int] | None]:
    """n0 and the exact valuations at n0, n0+1, n0+2.

    Beyond n0 every n-dependent length and exponent has a fixed sign and has
    passed any vanishing factor, so the valuation is a quadratic in n and the
    three samples determine it. The samples are None when the atom vanishes
    for all n >= n0.
    """
    n0 = 0
    for p in atom.pochs:
        if p.length.cn:
            # lengths past every factor with a nonpositive (or nonnegative) exponent
            need = max(1, -(p.a // p.b) + 1) if p.length.cn > 0 else max(1, p.a // p.b + 1)
            n0 = max(n0, _settled_from(p.length, k, need))
    for b in atom.brackets:
        if b.arg.cn:
            n0 = max(n0, _settled_from(b.arg, k, 1))
    for u in atom.units:
        if u.exponent.cn:
            n0 = max(n0, _settled_from(u.exponent, k, 1))
    forms = [normal_form(atom, n0 + i, k) for i in range(3)]
    if not forms[0].coeff:
        return n0, None
    return n0, (forms[0].qpow, forms[1].qpow, forms[2].qpow)


def summation_range(t: TermExpr, order: int, k: int = 0) -> int:
    """An n_stop such that every n >= n_stop contributes nothing through ``order``."""
    stop = 0
    for atom in t.atoms:
        if not atom.constant:
            continue
        n0, samples = _atom_tail(atom, k)
        if samples is None:
            stop = max(stop, n0)
            continue
        v0, v1, v2 = samples
        d1, d2 = v1 - v0, v2 - 2 * v1 + v0
        if d2 < 0 or (d2 == 0 and d1 <= 0):
            raise ValueError(f"valuation of atom {serialize_atom(atom)} does not grow in n; "
                             "the sum is not a power series")

        def val(s: int) -> int:
            return v0 + s * d1 + s * (s - 1) // 2 * d2

        # increasing from the vertex 1/2 - d1/d2 onwards
        s = 0 if d2 == 0 else max(0, math.ceil(Fraction(1, 2) - Fraction(d1, d2)))
        while val(s) <= order:
            s += 1
        stop = max(stop, n0 + s)
    return stop


def power_series_shift(t: TermExpr, k: int = 0) -> int:
    """Least s >= 0 such that q**s * t(n, k) is a power series for every n >= 0."""
    low = 0
    for n in range(summation_range(t, 0, k)):
        v = valuation_bound(t, n, k)
        if v != math.inf:
            low = min(low, int(v))
    return -low


def sum_series(t: TermExpr, order: int, k: int = 0, shift: int = 0) -> TruncSeries:
    """Sum over n >= 0 of q**shift * t(n, k), exact through ``order``."""
    out = TruncSeries.zero(order)
    for n in range(summation_range(t, order + shift, k)):
        out = out + eval_series(t, n, k, order, shift)
    return out


# --------------------------------------------------------------------------
# text form

_AFF = r"[0-9nk+\-]+"
_QUAD = r"(?:\([0-9nk^+\-]+\)/\d+|[0-9nk^+\-]+)"
_POW = r"(?:\^(-?\d+))?"
_RE_CONST = re.compile(r"-?\d+(?:/\d+)?")
_RE_SIGN = re.compile(rf"\(-1\)\^\(({_AFF})\)")
_RE_Q = re.compile(rf"q\^\(({_QUAD})\)")
_RE_POCH = re.compile(rf"\((-?)q(?:\^(-?\d+))?;q(?:\^(\d+))?\)_\(({_AFF})\){_POW}")
_RE_BR = re.compile(rf"\[({_AFF})\]{_POW}")
_RE_UNIT = re.compile(rf"\(1([+-])q\^\(({_AFF})\)\){_POW}")


def _qpow(e: int) -> str:
    return "q" if e == 1 else f"q^{e}"


def _pw(p: int) -> str:
    return "" if p == 1 else f"^{p}"


def serialize_atom(a: TermAtom) -> str:
    parts = [str(a.constant)]
    if not a.sign_exp.is_zero():
        parts.append(f"(-1)^({a.sign_exp})")
    if not a.q_exp.is_zero():
        parts.append(f"q^({a.q_exp})")
    for p in a.pochs:
        base = ("-" if p.sign < 0 else "") + _qpow(p.a)
        parts.append(f"({base};{_qpow(p.b)})_({p.length}){_pw(p.power)}")
    for b in a.brackets:
        parts.append(f"[{b.arg}]{_pw(b.power)}")
    for u in a.units:
        parts.append(f"(1{'-' if u.sign > 0 else '+'}q^({u.exponent})){_pw(u.power)}")
    return " * ".join(parts)


def serialize(t: TermExpr) -> str:
    return " + ".join(serialize_atom(a) for a in t.atoms)


def parse_atom(text: str) -> TermAtom:
    const = Fraction(1)
    sign = AffExpr()
    qe = QuadExpr()
    pochs, brs, units = [], [], []
    for tok in text.strip().split(" * "):
        tok = tok.strip()
        if m := _RE_CONST.fullmatch(tok):
            const *= Fraction(tok)
        elif m := _RE_SIGN.fullmatch(tok):
            sign = AffExpr.parse(m.group(1))
        elif m := _RE_Q.fullmatch(tok):
            qe = QuadExpr.parse(m.group(1))
        elif m := _RE_POCH.fullmatch(tok):
            neg, a, b, length, pw = m.groups()
            pochs.append(Poch(-1 if neg else 1, int(a) if a is not None else 1,
                              int(b) if b is not None else 1, AffExpr.parse(length),
                              int(pw) if pw else 1))
        elif m := _RE_BR.fullmatch(tok):
            brs.append(Bracket(AffExpr.parse(m.group(1)), int(m.group(2)) if m.group(2) else 1))
        elif m := _RE_UNIT.fullmatch(tok):
            sg, ex, pw = m.groups()
            units.append(UnitFactor(1 if sg == "-" else -1, AffExpr.parse(ex), int(pw) if pw else 1))
        else:
            raise ValueError(f"unrecognised factor {tok!r}")
    return TermAtom(const, sign, qe, tuple(pochs), tuple(brs), tuple(units))


def parse(text: str) -> TermExpr:
    return TermExpr(tuple(parse_atom(s) for s in text.strip().split(" + ")))
