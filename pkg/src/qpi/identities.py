"""Registry of q-identities and the coefficientwise verifier."""

from __future__ import annotations

from dataclasses import dataclass, field

from qpi.hypterm import TermExpr, parse, sum_series, valuation_bound
from qpi.qpoly import Poly, RatFunc
from qpi.qseries import ProductSpec, TruncSeries, first_mismatch, product_spec_series


@dataclass(frozen=True)
class IdentitySpec:
    """``sum_{n>=0} summand(n) = rhs`` as formal power series in q.

    ``candidates`` holds alternative right-hand sides under test; the
    verifier reports which of them (if any) agrees with the sum.
    """

    name: str
    summand: TermExpr
    rhs: ProductSpec
    description: str = ""
    candidates: dict[str, ProductSpec] = field(default_factory=dict)

    def valuation(self, n: int) -> float:
        return valuation_bound(self.summand, n, 0)

    def rhs_options(self) -> dict[str, ProductSpec]:
        return {"registered": self.rhs, **self.candidates}


@dataclass
class IdentityReport:
    name: str
    order: int
    passed: bool
    first_mismatch: int | None = None
    lhs_coeff: str | None = None
    rhs_coeff: str | None = None
    candidates: dict[str, int | None] = field(default_factory=dict)
    matching: list[str] = field(default_factory=list)

    def witness(self) -> dict:
        out: dict = {}
        if self.first_mismatch is not None:
            out.update(first_mismatch=self.first_mismatch, lhs=self.lhs_coeff, rhs=self.rhs_coeff)
        if len(self.candidates) > 1:
            out["candidates"] = {k: ("match" if v is None else f"mismatch at q^{v}")
                                 for k, v in self.candidates.items()}
            out["matching"] = self.matching
        return out


def _ps(*factors: tuple[int, int, int, int], prefactor: RatFunc | None = None) -> ProductSpec:
    return ProductSpec(tuple(factors), prefactor if prefactor is not None else RatFunc(1))


ONE_PLUS_Q = RatFunc(Poly([1, 1]))
INV_ONE_MINUS_Q = RatFunc(1, Poly([1, -1]))

_RHS_A1 = _ps((1, 2, 4, 1), (1, 6, 4, 1), (1, 4, 4, -2), prefactor=ONE_PLUS_Q)
_RHS_A11 = _ps((1, 3, 4, 1), (1, 5, 4, 1), (1, 4, 4, -2))

REGISTRY: dict[str, IdentitySpec] = {}


def _register(spec: IdentitySpec) -> IdentitySpec:
    REGISTRY[spec.name] = spec
    return spec


_register(IdentitySpec(
    "a1",
    parse("1 * q^(n^2) * (q;q^2)_(n)^2 * (q^2;q^4)_(n) * (q^4;q^4)_(n)^-3 * [6n+1]"),
    _RHS_A1,
    "q-analogue of sum (6n+1)(1/2)_n^3/(n!^3 4^n) = 4/pi",
))

_register(IdentitySpec(
    "a11",
    parse("1 * (-1)^(n) * q^(3n^2) * (q;q^2)_(n)^3 * (q^4;q^4)_(n)^-3 * [6n+1]"),
    _RHS_A11,
    "q-analogue of sum (-1)^n (6n+1)(1/2)_n^3/(n!^3 8^n) = 2 sqrt(2)/pi",
))

_register(IdentitySpec(
    "bauer_q",
    parse("1 * (-1)^(n) * q^(n^2) * (q;q^2)_(n)^3 * (q^2;q^2)_(n)^-3 * [4n+1]"),
    # registered right-hand side kept verbatim: (q;q^2)(q^3;q^2) / (q;q^2)^2
    _ps((1, 1, 2, 1), (1, 3, 2, 1), (1, 1, 2, -2)),
    "q-analogue of Bauer's sum (-1)^n (4n+1)(1/2)_n^3/n!^3 = 2/pi",
    candidates={"denominator_q2q2": _ps((1, 1, 2, 1), (1, 3, 2, 1), (1, 2, 2, -2))},
))

_register(IdentitySpec(
    "q1",
    parse(
        "1 * (-1)^(n) * q^(2n^2) * (q^2;q^4)_(n)^2 * (q;q^2)_(2n) * (q^4;q^4)_(n)^-2"
        " * (q^4;q^4)_(2n)^-1 * [8n+1]"
        " + 1 * (-1)^(n) * q^(2n^2+4n+1) * (q^2;q^4)_(n)^2 * (q;q^2)_(2n) * (q^4;q^4)_(n)^-2"
        " * (q^4;q^4)_(2n)^-1 * [4n+1] * (1+q^(4n+2))^-1"
    ),
    _RHS_A1,
    "first Guillera iterate of the (a1) pair",
))

_Q2_HEAD = ("1 * (-1)^(n) * q^({e}) * (q^2;q^4)_(n) * (q^2;q^4)_(2n) * (q;q^2)_(3n)"
            " * (q^4;q^4)_(n)^-2 * (q^4;q^4)_(3n)^-1 * (q;q^2)_(n)^-1")
_register(IdentitySpec(
    "q2",
    parse(
        _Q2_HEAD.format(e="2n^2") + " * [10n+1]"
        + " + " + _Q2_HEAD.format(e="2n^2+6n+1") + " * [4n+2] * [6n+1] * [12n+4]^-1"
        + " + " + _Q2_HEAD.format(e="2n^2+6n+3")
        + " * [6n+1] * [6n+3] * [8n+2] * [12n+4]^-1 * [12n+8]^-1 * (1+q^(2n+1))"
    ),
    _RHS_A1,
    "second Guillera iterate of the (a1) pair",
))

_Q3_HEAD = "q^({e}) * (q;q^2)_(2n)^2 * (q^4;q^4)_(n)^-2 * (q^4;q^4)_(2n)^-1"
_register(IdentitySpec(
    "q3",
    parse(
        "1 * " + _Q3_HEAD.format(e="4n^2") + " * [8n+1]"
        + " + -1 * " + _Q3_HEAD.format(e="4n^2+8n+3") + " * [4n+1]^2 * [8n+4]^-1"
    ),
    _RHS_A11,
    "Guillera iterate of the (a11) pair, read at 1/q",
))

_register(IdentitySpec(
    "q4",
    parse("1 * q^(2n^2) * (q;q^2)_(n)^2 * (q;q^2)_(2n) * (q^2;q^2)_(2n)^-1 * (q^6;q^6)_(n)^-2 * [8n+1]"),
    _ps((1, 3, 2, 1), (1, 3, 6, 1), (1, 2, 2, -1), (1, 6, 6, -1)),
    "q-analogue of sum (1/4)_n(1/2)_n(3/4)_n/(n!^3 9^n) (8n+1) = 2 sqrt(3)/pi",
))

_register(IdentitySpec(
    "s4a",
    parse("1 * q^(n^2) * (q^2;q^4)_(n) * (-q;q^2)_(n)^2 * (q^4;q^4)_(n)^-1 * (-q^4;q^4)_(n)^-2 * [6n+1]"),
    _ps((-1, 2, 4, 2), (-1, 4, 4, -2), prefactor=INV_ONE_MINUS_Q),
    "quadratic transformation at a=q, d=-q, b=q^2 (base q^2)",
))

_register(IdentitySpec(
    "s4b",
    parse("1 * (-1)^(n) * q^(3n^2) * (q;q^2)_(n) * (-q;q^2)_(n)^2 * (q^4;q^4)_(n)^-1 * (-q^4;q^4)_(n)^-2 * [6n+1]"),
    _ps((1, 3, 4, 1), (1, 5, 4, 1), (-1, 4, 4, -2)),
    "quadratic transformation at a=q, d=-q, b -> infinity (base q^2)",
))

_register(IdentitySpec(
    "slater",
    parse("1 * q^(n^2) * (q;q^2)_(n) * (q^4;q^4)_(n)^-1"),
    _ps((1, 2, 4, 2), (1, 1, 2, -1)),
    "Slater's evaluation used to close the (a1) partial sums",
))


def get(name: str) -> IdentitySpec:
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown identity {name!r}; known: {', '.join(REGISTRY)}") from None


def truncated_lhs(spec: IdentitySpec, order: int) -> TruncSeries:
    """The left-hand sum through q^order."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    return sum_series(spec.summand, order)


def verify_identity(spec: IdentitySpec, order: int) -> IdentityReport:
    """Compare the truncated sum with every registered right-hand side.

    Passes when at least one right-hand side agrees through ``order``.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    lhs = truncated_lhs(spec, order)
    report = IdentityReport(spec.name, order, False)
    for label, rhs_spec in spec.rhs_options().items():
        rhs = product_spec_series(rhs_spec, order)
        mm = first_mismatch(lhs, rhs)
        report.candidates[label] = mm
        if mm is None:
            report.matching.append(label)
        elif label == "registered":
            report.first_mismatch = mm
            report.lhs_coeff, report.rhs_coeff = str(lhs[mm]), str(rhs[mm])
    report.passed = bool(report.matching)
    if report.passed and "registered" in report.matching:
        report.first_mismatch = report.lhs_coeff = report.rhs_coeff = None
    return report
