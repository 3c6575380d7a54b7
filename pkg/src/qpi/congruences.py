"""Truncated-sum congruences: q-analogues modulo [n] and [n]Phi_n^2, and the classical mod p^3 one."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from qpi.exactnum import (
    NonPIntegralError,
    divisors,
    is_prime,
    kronecker_minus3,
    mod_prime_power_reduce,
    pochhammer_rational,
)
from qpi.hypterm import TermExpr, eval_cyclo, parse
from qpi.qpoly import Poly, RatFunc, cyclotomic, divide_out_cyclotomic, q_number, sum_cyclo


class Outcome(enum.Enum):
    PASS = "pass"
    MODULUS_DIVISION_FAILS = "modulus_division_fails"
    DENOMINATOR_NOT_COPRIME = "denominator_not_coprime"


@dataclass(frozen=True)
class CongruenceSpec:
    """sum_{k=0}^{upper(n)} summand(k) == q^{-shift(n)} * rhs(n)  (mod modulus(n)).

    ``rhs`` returns the right side already multiplied by q^{shift(n)}, so the
    checked difference is q^{shift(n)} * S - rhs(n).
    """

    name: str
    summand: TermExpr  # in the summation index, written as n
    upper: Callable[[int], int]
    rhs: Callable[[int], Poly]
    shift: Callable[[int], int]
    modulus: Callable[[int], dict[int, int]]  # cyclotomic exponents {d: e}
    admissible: Callable[[int], bool]
    admissible_text: str


@dataclass
class CongruenceReport:
    name: str
    n: int
    outcome: Outcome
    modulus: dict[int, int]
    valuations: dict[int, int] = field(default_factory=dict)
    offending: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.outcome is Outcome.PASS

    def witness(self) -> dict:
        out: dict = dict(outcome=self.outcome.value,
                         modulus={str(d): e for d, e in sorted(self.modulus.items())})
        if self.outcome is Outcome.MODULUS_DIVISION_FAILS:
            out["phi_valuations"] = {str(d): v for d, v in sorted(self.valuations.items())}
        if self.offending:
            out["shared_denominator_factors"] = self.offending
        return out


# --------------------------------------------------------------------------
# moduli and right-hand sides


def q_number_modulus(n: int) -> dict[int, int]:
    """[n] = prod_{d | n, d > 1} Phi_d."""
    return {d: 1 for d in divisors(n) if d > 1}


def q_number_phi_squared_modulus(n: int) -> dict[int, int]:
    """[n] Phi_n^2; for n = 1 this is (q - 1)^2 since [1] = 1."""
    out = q_number_modulus(n)
    out[n] = out.get(n, 0) + 2
    return out


def modulus_poly(exps: dict[int, int]) -> Poly:
    out = Poly([1])
    for d, e in exps.items():
        out = out * cyclotomic(d) ** e
    return out


def _half(n: int) -> int:
    return (n - 1) // 2


def _full(n: int) -> int:
    return n - 1


def _q4_rhs(n: int) -> Poly:
    # q^{(n-1)/2} times q^{-(n-1)/2} [n] (-3/n)
    return Poly.from_ints([kronecker_minus3(n)] * n)


def _coprime_to_6(n: int) -> bool:
    return n >= 1 and n % 2 == 1 and n % 3 != 0


def _odd(n: int) -> bool:
    return n >= 1 and n % 2 == 1


_Q4_SUMMAND = parse(
    "1 * q^(2n^2) * (q;q^2)_(n)^2 * (q;q^2)_(2n) * (q^2;q^2)_(2n)^-1 * (q^6;q^6)_(n)^-2 * [8n+1]"
)
_S4A_SUMMAND = parse(
    "1 * q^(n^2) * (q^2;q^4)_(n) * (-q;q^2)_(n)^2 * (q^4;q^4)_(n)^-1 * (-q^4;q^4)_(n)^-2 * [6n+1]"
)
_S4B_SUMMAND = parse(
    "1 * (-1)^(n) * q^(3n^2) * (q;q^2)_(n) * (-q;q^2)_(n)^2 * (q^4;q^4)_(n)^-1 * (-q^4;q^4)_(n)^-2 * [6n+1]"
)


def _zero(n: int) -> Poly:
    return Poly()


def _no_shift(n: int) -> int:
    return 0


def _make_specs() -> dict[str, CongruenceSpec]:
    out = {}
    for variant, upper in (("half", _half), ("full", _full)):
        out[f"cong_q4_{variant}"] = CongruenceSpec(
            f"cong_q4_{variant}", _Q4_SUMMAND, upper, _q4_rhs, _half,
            q_number_phi_squared_modulus, _coprime_to_6, "n >= 1 coprime to 6",
        )
        for tag, summand in (("s4a", _S4A_SUMMAND), ("s4b", _S4B_SUMMAND)):
            out[f"cong_{tag}_{variant}"] = CongruenceSpec(
                f"cong_{tag}_{variant}", summand, upper, _zero, _no_shift,
                q_number_modulus, _odd, "odd n >= 1",
            )
    return out


SPECS: dict[str, CongruenceSpec] = _make_specs()

DEFAULT_SWEEPS: dict[str, list[int]] = {
    **{f"cong_q4_{v}": [5, 7, 11, 13, 17, 19, 23, 25] for v in ("half", "full")},
    **{f"cong_{t}_{v}": list(range(3, 26, 2)) for t in ("s4a", "s4b") for v in ("half", "full")},
}


# --------------------------------------------------------------------------
# checking


def truncated_sum_ratfunc(cs: CongruenceSpec, n: int) -> RatFunc:
    """Exact canonical sum of summand(k) for 0 <= k <= upper(n)."""
    if not cs.admissible(n):
        raise ValueError(f"{cs.name}: n={n} not admissible ({cs.admissible_text})")
    terms = []
    for k in range(cs.upper(n) + 1):
        terms.extend(eval_cyclo(cs.summand, k, 0))
    return sum_cyclo(terms)


def congruence_difference(cs: CongruenceSpec, n: int) -> RatFunc:
    """q^{shift(n)} * S(q) - rhs(n) as a canonical rational function."""
    s = truncated_sum_ratfunc(cs, n)
    h = cs.shift(n)
    if h:
        s = s * RatFunc(Poly.monomial(h))
    return s - RatFunc(cs.rhs(n))


def check_congruence_difference(delta: RatFunc, modulus: dict[int, int]) -> tuple[Outcome, dict[int, int], list[int]]:
    """Localized divisibility: the Phi_d-adic valuation of delta reaches every exponent of the modulus."""
    dfac = delta.den_factors
    if dfac is None:
        # fall back to testing each modulus factor against the denominator directly
        shared = [d for d in modulus if divide_out_cyclotomic(list(delta.den.int_coeffs), d, 1)[1]]
    else:
        shared = [d for d in modulus if dfac[1].get(d, 0) > 0]
    if shared:
        return Outcome.DENOMINATOR_NOT_COPRIME, {}, sorted(shared)
    if delta.is_zero():
        return Outcome.PASS, {d: e for d, e in modulus.items()}, []
    ints = list(delta.num.int_coeffs)
    vals = {}
    ok = True
    for d, e in sorted(modulus.items()):
        _, v = divide_out_cyclotomic(ints, d, e)
        vals[d] = v
        ok = ok and v >= e
    return (Outcome.PASS if ok else Outcome.MODULUS_DIVISION_FAILS), vals, []


def check_q_congruence(cs: CongruenceSpec, n: int) -> CongruenceReport:
    modulus = cs.modulus(n)
    delta = congruence_difference(cs, n)
    outcome, vals, shared = check_congruence_difference(delta, modulus)
    return CongruenceReport(cs.name, n, outcome, modulus, vals, shared)


def modulus_divides(delta: RatFunc, modulus: dict[int, int]) -> bool:
    """Second route: one long division of the numerator by the expanded modulus."""
    m = modulus_poly(modulus)
    return not (delta.num % m)


def q_to_one_rhs(cs: CongruenceSpec, n: int) -> Fraction:
    """The right side (before the q-shift) at q = 1."""
    return Fraction(cs.rhs(n)(1))


# --------------------------------------------------------------------------
# classical supercongruence


@dataclass
class ClassicalReport:
    p: int
    variant: str
    residue: int
    expected: int

    @property
    def passed(self) -> bool:
        return self.residue == self.expected

    def witness(self) -> dict:
        return dict(p=self.p, variant=self.variant, residue=self.residue,
                    expected=self.expected, modulus=self.p**3)


def classical_term(k: int) -> Fraction:
    """(1/4)_k (1/2)_k (3/4)_k / (k!^3 9^k) * (8k + 1)."""
    num = (pochhammer_rational(Fraction(1, 4), k) * pochhammer_rational(Fraction(1, 2), k)
           * pochhammer_rational(Fraction(3, 4), k))
    return num / (pochhammer_rational(1, k) ** 3 * 9**k) * (8 * k + 1)


def classical_sum(p: int, variant: str) -> Fraction:
    if variant not in ("half", "full"):
        raise ValueError("variant must be 'half' or 'full'")
    upper = (p - 1) // 2 if variant == "half" else p - 1
    return sum((classical_term(k) for k in range(upper + 1)), Fraction(0))


def check_classical_supercongruence(p: int, variant: str, sign_override: int | None = None) -> ClassicalReport:
    """Compare the truncated sum with p * (-3/p) modulo p^3.

    ``sign_override`` replaces the character value; used only to show the
    check is sensitive to it.
    """
    if not is_prime(p) or p <= 3:
        raise ValueError(f"p must be a prime > 3, got {p}")
    total = classical_sum(p, variant)
    try:
        residue = mod_prime_power_reduce(total, p, 3)
    except NonPIntegralError as exc:
        raise NonPIntegralError(f"non-p-integral term in the truncated sum at p={p}") from exc
    chi = kronecker_minus3(p) if sign_override is None else sign_override
    return ClassicalReport(p, variant, residue, (p * chi) % p**3)


DEFAULT_CLASSICAL_PRIMES = [5, 7, 11, 13]
