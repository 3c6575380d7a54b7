"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

from __future__ import annotations

import time
from fractions import Fraction

import mpmath

from qpi import congruences as cg
from qpi import identities as ids
from qpi import numerics as nm
from qpi import transforms as tf
from qpi import wz
from qpi.exactnum import divisors
from qpi.qpoly import Poly, cyclotomic
from qpi.qseries import TruncSeries, infinite_poch_series, product_spec_series, series_invert


def test_criterion_01_identity_suite(criterion):
    names = ["a1", "a11", "q1", "q2", "q3", "q4", "s4a", "s4b", "slater"]
    start = time.perf_counter()
    failed = [n for n in names if "registered" not in ids.verify_identity(ids.get(n), 100).matching]
    elapsed = time.perf_counter() - start
    ok = not failed and elapsed < 30
    criterion(1, ok, f"{len(names) - len(failed)}/{len(names)} exact through q^100 in {elapsed:.2f}s"
              + (f"; failing {failed}" if failed else ""))


def test_criterion_02_bauer_candidates(criterion):
    rep = ids.verify_identity(ids.get("bauer_q"), 60)
    first = rep.candidates["registered"]
    ok = rep.passed and len(rep.matching) == 1
    criterion(2, ok, f"matching={rep.matching}; registered form "
              + ("matches" if first is None else f"first differs at q^{first}"))


def test_criterion_03_wz_relation(criterion):
    fam1, fam2 = wz.FAMILIES["wz_q1_family"], wz.FAMILIES["wz_q3_family"]
    checks = {
        "first pair, shifted": wz.check_relation(fam1.shifted, 10, -10, 10),
        "first pair, standard": wz.check_relation(fam1.base, 10, 0, 10),
        "second pair, standard": wz.check_relation(fam2.base, 10, 0, 10),
    }
    mutant = wz.WZPair(fam1.shifted.F, wz.perturb(fam1.shifted.G), wz.Convention.SHIFTED)
    mutated = wz.check_relation(mutant, 10, -10, 10)
    ok = all(r.passed for r in checks.values()) and not mutated.passed
    detail = "; ".join(f"{k}: {'ok' if r.passed else 'FAILED'} ({r.checked} cells)" for k, r in checks.items())
    criterion(3, ok, detail + f"; mutated G {'rejected' if not mutated.passed else 'ACCEPTED'}")


def test_criterion_04_iteration_conformance(criterion):
    cells = wz.grid(6, 0, 6)
    results = []
    for name, depth in (("wz_q1_family", 3), ("wz_q3_family", 2)):
        fam = wz.FAMILIES[name]
        for i, (got, want) in enumerate(zip(fam.iterates(depth), fam.explicit)):
            if i == 0:
                continue
            okF = wz.check_conformance(got.F, want.F, cells).passed
            okG = wz.check_conformance(got.G, want.G, cells).passed
            results.append((f"{name}[{i + 1}]", okF and okG))
    ok = len(results) == 3 and all(r for _, r in results)
    criterion(4, ok, ", ".join(f"{n}={'ok' if r else 'FAILED'}" for n, r in results))


def test_criterion_05_sum_invariance(criterion):
    fam1, fam2 = wz.FAMILIES["wz_q1_family"], wz.FAMILIES["wz_q3_family"]
    iterated = [p.F for p in fam1.iterates(3)]
    explicit = [p.F for p in fam1.explicit]
    inv_it = wz.check_sum_invariance(iterated, ids.get("a1").rhs, 60)
    inv_ex = wz.check_sum_invariance(explicit, ids.get("a1").rhs, 60)
    f2 = wz.guillera_iterate(fam2.base).F
    chain = wz.check_qinv_chain(f2, ids.get("q3").summand, 10)
    ok = inv_it.passed and inv_ex.passed and chain.passed
    criterion(5, ok, f"iterated sums {inv_it.passed}, explicit sums {inv_ex.passed} through q^60; "
              f"1/q chain {chain.passed} for n<=10")


def test_criterion_06_partial_sums_and_k_independence(criterion):
    partial = [wz.check_partial_sum(wz.A1_PAIR, m).passed for m in range(1, 9)]
    fam = wz.FAMILIES["wz_q1_family"]
    kind = wz.check_k_independence(fam.explicit[0].F, ids.get("a1").rhs, [0, 1, 2, 3], 40)
    ok = all(partial) and kind.passed
    criterion(6, ok, f"partial sums m=1..8: {sum(partial)}/8; k-independence k=0..3 through q^40: {kind.passed}")


def test_criterion_07_transformation_batteries(criterion):
    reproduced = []
    for label, p in tf.IDENTITY_SPECIALIZATIONS.items():
        sp = tf.both_sides(p, 60)
        spec = ids.get(label)
        same = (sp.equal and sp.shift == 0 and sp.lhs == ids.truncated_lhs(spec, 60)
                and sp.rhs == product_spec_series(spec.rhs, 60))
        reproduced.append((label, same))
    extra = {}
    registered = {p.describe() for p in tf.IDENTITY_SPECIALIZATIONS.values()}
    for kind, battery in tf.BATTERIES.items():
        others = [p for p in battery if p.describe() not in registered]
        extra[kind] = (sum(tf.both_sides(p, 40).equal for p in others), len(others))
    ok = all(r for _, r in reproduced) and all(good == total and total >= 10 for good, total in extra.values())
    criterion(7, ok, ", ".join(f"{n}={'ok' if r else 'FAILED'}" for n, r in reproduced)
              + "; " + ", ".join(f"{k} extra {g}/{t}" for k, (g, t) in extra.items()))


def test_criterion_08_classical_supercongruence(criterion):
    start = time.perf_counter()
    reps = [cg.check_classical_supercongruence(p, v) for p in (5, 7, 11, 13) for v in ("half", "full")]
    elapsed = time.perf_counter() - start
    at5 = {r.variant: r.residue for r in reps if r.p == 5}
    ok = all(r.passed for r in reps) and at5 == {"half": 120, "full": 120} and elapsed < 1
    criterion(8, ok, f"{sum(r.passed for r in reps)}/8 pass; p=5 residues {at5} (= -5 mod 125); {elapsed:.3f}s")


def test_criterion_09_q_supercongruences(criterion):
    bad = []
    count = 0
    for name, ns in cg.DEFAULT_SWEEPS.items():
        spec = cg.SPECS[name]
        for n in ns:
            count += 1
            if not cg.check_q_congruence(spec, n).passed:
                bad.append((name, n))
    sweeps_ok = (cg.DEFAULT_SWEEPS["cong_q4_half"] == [5, 7, 11, 13, 17, 19, 23, 25]
                 and cg.DEFAULT_SWEEPS["cong_s4a_full"] == list(range(3, 26, 2)))
    criterion(9, not bad and sweeps_ok, f"{count - len(bad)}/{count} (name, n) cases pass"
              + (f"; failing {bad}" if bad else ""))


def test_criterion_10_pi_limits(criterion):
    ctx = nm.FloatCtx(prec_bits=256)
    parts = []
    ok = True
    for name, ps in nm.PI_SERIES.items():
        res = nm.classical_pi_series(name, ctx)
        budget = 10**5 if name == "bauer_2pi" else 500
        tol = 1e-3 if name == "bauer_2pi" else 1e-40
        good = res.gap < tol and res.terms <= budget
        ok = ok and good
        parts.append(f"{name}={mpmath.nstr(res.gap, 3)}@{res.terms}")
    criterion(10, ok and len(parts) == 7, "; ".join(parts))


def _pentagonal_coefficients(order: int) -> list[int]:
    out = [0] * (order + 1)
    k = 0
    while True:
        hit = False
        for j in ((k, -k) if k else (0,)):
            e = j * (3 * j - 1) // 2
            if e <= order:
                out[e] += (-1) ** (abs(j) % 2)
                hit = True
        if not hit:
            return out
        k += 1


def test_criterion_11_internal_oracles(criterion):
    euler = infinite_poch_series(1, 1, 1, 60).int_coeffs == _pentagonal_coefficients(60)
    cyclo = True
    for n in range(1, 61):
        prod = Poly([1])
        for d in divisors(n):
            prod = prod * cyclotomic(d)
        cyclo = cyclo and prod == Poly.monomial(n) - 1
    samples = [
        infinite_poch_series(1, 1, 1, 60),
        TruncSeries([Fraction(3, 2), -1, Fraction(5, 7), 0, 11], 40),
        TruncSeries([-1] + [Fraction(1, k) for k in range(1, 30)], 30),
    ]
    invert = all(series_invert(s) * s == TruncSeries.one(s.order)
                 and series_invert(series_invert(s)) == s for s in samples)
    criterion(11, euler and cyclo and invert,
              f"pentagonal through q^60: {euler}; q^n-1 = prod Phi_d for n<=60: {cyclo}; invert round-trip: {invert}")
