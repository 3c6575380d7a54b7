"""WZ pairs: exact telescoping checks, Guillera's iteration and the two families."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

from qpi.hypterm import (
    AffExpr,
    N_ID,
    QuadExpr,
    TermExpr,
    ZERO_TERM,
    eval_ratfunc,
    parse,
    power_series_shift,
    sum_series,
    tilde,
)
from qpi.qpoly import RatFunc, ratfunc_qinv_equal, sum_ratfuncs
from qpi.qseries import ProductSpec, first_mismatch, product_spec_series
from qpi.parallel import pmap


class Convention(enum.Enum):
    SHIFTED = "shifted"    # F(n,k-1) - F(n,k) = G(n+1,k) - G(n,k)
    STANDARD = "standard"  # F(n,k+1) - F(n,k) = G(n+1,k) - G(n,k)


@dataclass(frozen=True)
class WZPair:
    F: TermExpr
    G: TermExpr
    convention: Convention = Convention.STANDARD

    def tilde(self) -> "WZPair":
        """Reflect k -> -k; swaps the two conventions."""
        other = Convention.STANDARD if self.convention is Convention.SHIFTED else Convention.SHIFTED
        return WZPair(tilde(self.F), tilde(self.G), other)


@dataclass
class CheckReport:
    passed: bool
    checked: int = 0
    failure: dict | None = None
    details: dict = field(default_factory=dict)

    def witness(self) -> dict:
        out = dict(checked=self.checked)
        if self.failure is not None:
            out["failure"] = self.failure
        out.update(self.details)
        return out


# --------------------------------------------------------------------------
# relation on a grid


def _short(x, limit: int = 160) -> str:
    text = str(x)
    return text if len(text) <= limit else text[: limit - 3] + "..."


def relation_sides(p: WZPair, n: int, k: int) -> tuple[RatFunc, RatFunc]:
    """(F-difference, G-difference) at one cell, both exact."""
    k_prev = k - 1 if p.convention is Convention.SHIFTED else k + 1
    lhs = eval_ratfunc(p.F, n, k_prev) - eval_ratfunc(p.F, n, k)
    rhs = eval_ratfunc(p.G, n + 1, k) - eval_ratfunc(p.G, n, k)
    return lhs, rhs


def _cell_ok(args) -> bool:
    p, n, k = args
    lhs, rhs = relation_sides(p, n, k)
    return lhs == rhs


def check_relation(p: WZPair, n_max: int, k_min: int, k_max: int, n_min: int = 0) -> CheckReport:
    """Exact per-cell check of the WZ relation on [n_min, n_max] x [k_min, k_max]."""
    cells = [(n, k) for n in range(n_min, n_max + 1) for k in range(k_min, k_max + 1)]
    results = pmap(_cell_ok, [(p, n, k) for n, k in cells])
    for (n, k), ok in zip(cells, results):
        if not ok:
            lhs, rhs = relation_sides(p, n, k)
            return CheckReport(False, len(cells), dict(n=n, k=k, lhs=_short(lhs), rhs=_short(rhs)))
    return CheckReport(True, len(cells))


# --------------------------------------------------------------------------
# Guillera's iteration


def guillera_iterate(p: WZPair) -> WZPair:
    """F2(n,k) = F1(n,n+k) + G1(n+1,n+k), G2(n,k) = G1(n,n+k)."""
    if p.convention is not Convention.STANDARD:
        raise ValueError("iteration needs a pair in the standard convention")
    diag = AffExpr(1, 1, 0)
    f2 = p.F.substitute(N_ID, diag) + p.G.substitute(AffExpr(1, 0, 1), diag)
    g2 = p.G.substitute(N_ID, diag)
    return WZPair(_drop_zero_atoms(f2), _drop_zero_atoms(g2), Convention.STANDARD)


def _drop_zero_atoms(t: TermExpr) -> TermExpr:
    atoms = tuple(a for a in t.atoms if a.constant)
    return TermExpr(atoms) if atoms else ZERO_TERM


def check_conformance(a: TermExpr, b: TermExpr, cells: Iterable[tuple[int, int]]) -> CheckReport:
    """Extensional equality of two terms as rational functions on the given cells."""
    count = 0
    for n, k in cells:
        count += 1
        fa, fb = eval_ratfunc(a, n, k), eval_ratfunc(b, n, k)
        if fa != fb:
            return CheckReport(False, count, dict(n=n, k=k, lhs=_short(fa), rhs=_short(fb)))
    return CheckReport(True, count)


# --------------------------------------------------------------------------
# the (a1) pair: partial sums and k-independence


def check_partial_sum(p: WZPair, m: int, reindexed: TermExpr | None = None) -> CheckReport:
    """sum_{n<m} F(n,0) = sum_{k=1..m} G(m,k) for a pair in the shifted convention.

    ``reindexed`` (a term in (n=m, k)) is summed over 0 <= k < m and must
    give the same value; it defaults to the closed form for the (a1) pair.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    if p.convention is not Convention.SHIFTED:
        raise ValueError("partial-sum identity is stated for the shifted convention")
    lhs = sum_ratfuncs(eval_ratfunc(p.F, n, 0) for n in range(m))
    rhs = sum_ratfuncs(eval_ratfunc(p.G, m, k) for k in range(1, m + 1))
    if lhs != rhs:
        return CheckReport(False, 1, dict(m=m, form="G-sum", lhs=_short(lhs), rhs=_short(rhs)))
    if reindexed is None:
        reindexed = A1_PARTIAL_SUM_REINDEXED
    alt = sum_ratfuncs(eval_ratfunc(reindexed, m, k) for k in range(m))
    if lhs != alt:
        return CheckReport(False, 2, dict(m=m, form="reindexed", lhs=_short(lhs), rhs=_short(alt)))
    return CheckReport(True, 2, details=dict(m=m))


def check_k_independence(family: TermExpr, C: ProductSpec, k_set: Iterable[int], order: int) -> CheckReport:
    """For each k, sum_n family(n, k) equals C through ``order``."""
    if order < 1:
        raise ValueError("order must be at least 1")
    target = product_spec_series(C, order)
    per_k: dict[int, str] = {}
    count = 0
    for k in k_set:
        if k < 0:
            raise ValueError("k must be nonnegative")
        count += 1
        shift = power_series_shift(family, k)
        lhs = sum_series(family, order, k, shift)
        rhs = target.shift(shift).truncate(order) if shift else target
        mm = first_mismatch(lhs, rhs)
        per_k[k] = "match" if mm is None else f"mismatch at q^{mm - shift}"
        if mm is not None:
            return CheckReport(False, count, dict(k=k, degree=mm - shift, lhs=str(lhs[mm]), rhs=str(rhs[mm])),
                               dict(per_k=per_k))
    return CheckReport(True, count, details=dict(per_k=per_k))


def check_sum_invariance(terms: list[TermExpr], C: ProductSpec, order: int) -> CheckReport:
    """Each sum_n term(n, 0) equals C through ``order``."""
    target = product_spec_series(C, order)
    for i, t in enumerate(terms):
        mm = first_mismatch(sum_series(t, order), target)
        if mm is not None:
            return CheckReport(False, i + 1, dict(index=i, degree=mm))
    return CheckReport(True, len(terms))


def check_qinv_chain(a: TermExpr, b: TermExpr, n_max: int = 10, at_inverse: bool = True) -> CheckReport:
    """a(n,0; q) equals b(n,0; 1/q) for 0 <= n <= n_max.

    ``at_inverse=False`` compares at q itself; it exists so the substitution
    can be shown to be doing something.
    """
    for n in range(n_max + 1):
        fa, fb = eval_ratfunc(a, n, 0), eval_ratfunc(b, n, 0)
        ok = ratfunc_qinv_equal(fa, fb) if at_inverse else fa == fb
        if not ok:
            return CheckReport(False, n + 1, dict(n=n, lhs=_short(fa), rhs=_short(fb)))
    return CheckReport(True, n_max + 1)


# --------------------------------------------------------------------------
# the two families


_FAM1_F = parse(
    "1 * q^(n^2-2nk+k^2) * [6n-2k+1] * (q^2;q^4)_(n) * (q;q^2)_(n-k) * (q;q^2)_(n+k)"
    " * (q^4;q^4)_(n)^-2 * (q^4;q^4)_(n-k)^-1 * (q^2;q^4)_(k)^-1"
)
_FAM1_G = parse(
    "1 * q^(n^2-2nk+k^2) * (q^2;q^4)_(n) * (q;q^2)_(n-k) * (q;q^2)_(n+k-1) * (1-q^(1))^-1"
    " * (q^4;q^4)_(n-1)^-2 * (q^4;q^4)_(n-k)^-1 * (q^2;q^4)_(k)^-1"
)

#: the (a1) pair in the shifted convention
A1_PAIR = WZPair(_FAM1_F, _FAM1_G, Convention.SHIFTED)

#: sum_{k<m} of this at (n=m, k) equals the m-th partial sum of (a1)
A1_PARTIAL_SUM_REINDEXED = parse(
    "1 * q^(k^2) * (q^2;q^4)_(n) * (1-q^(1))^-1 * (q^4;q^4)_(n-1)^-2 * (q;q^2)_(k)"
    " * (q;q^2)_(2n-k-1) * (q^4;q^4)_(k)^-1 * (q^2;q^4)_(n-k)^-1"
)

# closed forms of the first family in the standard convention
FAM1_F1 = parse(
    "1 * (-1)^(k) * q^(n^2+2nk-k^2) * [6n+2k+1] * (q^2;q^4)_(n) * (q;q^2)_(n+k) * (q;q^2)_(n-k)"
    " * (q^2;q^4)_(k) * (q^4;q^4)_(n)^-2 * (q^4;q^4)_(n+k)^-1"
)
FAM1_G1 = parse(
    "1 * (-1)^(k) * q^(n^2+2nk-k^2) * (q^2;q^4)_(n) * (q;q^2)_(n+k) * (q;q^2)_(n-k-1)"
    " * (q^2;q^4)_(k) * (1-q^(1))^-1 * (q^4;q^4)_(n-1)^-2 * (q^4;q^4)_(n+k)^-1"
)
_F2_HEAD = ("(-1)^(n) * q^({e}) * (q^2;q^4)_(n) * (q;q^2)_(2n+k) * (q^2;q^4)_(n+k)"
            " * (q^4;q^4)_(n)^-2 * (q^4;q^4)_(2n+k)^-1 * (q;q^2)_(k)^-1")
FAM1_F2 = parse(
    "1 * " + _F2_HEAD.format(e="2n^2") + " * [8n+2k+1]"
    " + 1 * " + _F2_HEAD.format(e="2n^2+4n+2k+1")
    + " * (1-q^(4n+2)) * (1-q^(4n+2k+1)) * (1-q^(1))^-1 * (1-q^(8n+4k+4))^-1"
)
FAM1_G2 = parse(
    "1 * (-1)^(n-1) * q^(2n^2+2k+1) * (q^2;q^4)_(n) * (q;q^2)_(2n+k) * (q^2;q^4)_(n+k)"
    " * (1-q^(1))^-1 * (q^4;q^4)_(n-1)^-2 * (q^4;q^4)_(2n+k)^-1 * (q;q^2)_(k+1)^-1"
)
_F3_HEAD = ("(-1)^(n) * q^({e}) * (q^2;q^4)_(n) * (q;q^2)_(3n+k) * (q^2;q^4)_(2n+k)"
            " * (q^4;q^4)_(n)^-2 * (q^4;q^4)_(3n+k)^-1 * (q;q^2)_(n+k)^-1")
FAM1_F3 = parse(
    "1 * " + _F3_HEAD.format(e="2n^2") + " * [10n+2k+1]"
    " + 1 * " + _F3_HEAD.format(e="2n^2+6n+2k+1")
    + " * (1-q^(4n+2)) * (1-q^(6n+2k+1)) * (1-q^(1))^-1 * (1-q^(12n+4k+4))^-1"
    " + 1 * " + _F3_HEAD.format(e="2n^2+6n+2k+3")
    + " * (1-q^(4n+2)) * (1-q^(6n+2k+1)) * (1-q^(6n+2k+3)) * (1-q^(8n+4k+2))"
    " * (1-q^(1))^-1 * (1-q^(12n+4k+4))^-1 * (1-q^(12n+4k+8))^-1 * (1-q^(2n+2k+1))^-1"
)
FAM1_G3 = parse(
    "1 * (-1)^(n-1) * q^(2n^2+2n+2k+1) * (q^2;q^4)_(n) * (q;q^2)_(3n+k) * (q^2;q^4)_(2n+k)"
    " * (1-q^(1))^-1 * (q^4;q^4)_(n-1)^-2 * (q^4;q^4)_(3n+k)^-1 * (q;q^2)_(n+k+1)^-1"
)

# second family, standard convention
FAM2_F1 = parse(
    "1 * (-1)^(n+k) * [6n+2k+1] * (q;q^2)_(n-k) * (q;q^2)_(n+k)^2 * (q^4;q^4)_(n)^-2 * (q^4;q^4)_(n+k)^-1"
)
FAM2_G1 = parse(
    "1 * (-1)^(n+k) * (q;q^2)_(n-k-1) * (q;q^2)_(n+k)^2 * (1-q^(1))^-1"
    " * (q^4;q^4)_(n-1)^-2 * (q^4;q^4)_(n+k)^-1"
)
_FAM2_HEAD = "(q;q^2)_(2n+k)^2 * (q^4;q^4)_(n)^-2 * (q^4;q^4)_(2n+k)^-1 * (q;q^2)_(k)^-1"
FAM2_F2 = parse(
    "1 * q^(k^2) * " + _FAM2_HEAD + " * [8n+2k+1]"
    " + -1 * q^(k^2) * " + _FAM2_HEAD + " * [4n+2k+1]^2 * [8n+4k+4]^-1"
)
FAM2_G2 = parse(
    "-1 * q^(k^2+2k+1) * (q;q^2)_(2n+k)^2 * (1-q^(1))^-1 * (q^4;q^4)_(n-1)^-2"
    " * (q^4;q^4)_(2n+k)^-1 * (q;q^2)_(k+1)^-1"
)


@dataclass(frozen=True)
class WZFamily:
    name: str
    base: WZPair                       # standard convention
    explicit: tuple[WZPair, ...]       # closed forms of the first pair and its iterates
    shifted: WZPair | None = None

    def iterates(self, count: int) -> list[WZPair]:
        out = [self.base]
        for _ in range(count - 1):
            out.append(guillera_iterate(out[-1]))
        return out


FAMILIES: dict[str, WZFamily] = {
    "wz_q1_family": WZFamily(
        "wz_q1_family",
        A1_PAIR.tilde(),
        (WZPair(FAM1_F1, FAM1_G1), WZPair(FAM1_F2, FAM1_G2), WZPair(FAM1_F3, FAM1_G3)),
        A1_PAIR,
    ),
    "wz_q3_family": WZFamily(
        "wz_q3_family",
        WZPair(FAM2_F1, FAM2_G1),
        (WZPair(FAM2_F1, FAM2_G1), WZPair(FAM2_F2, FAM2_G2)),
    ),
}


def grid(n_max: int, k_min: int, k_max: int) -> list[tuple[int, int]]:
    return [(n, k) for n in range(n_max + 1) for k in range(k_min, k_max + 1)]


def perturb(t: TermExpr, index: int = 0) -> TermExpr:
    """Multiply one atom by q; used for mutation tests."""
    atoms = list(t.atoms)
    atoms[index] = atoms[index].times_q(QuadExpr(c=1))
    return TermExpr(tuple(atoms))


__all__ = [
    "Convention", "WZPair", "WZFamily", "CheckReport", "FAMILIES", "A1_PAIR",
    "check_relation", "guillera_iterate", "check_conformance", "check_partial_sum",
    "check_k_independence", "check_sum_invariance", "check_qinv_chain", "grid", "perturb",
]
