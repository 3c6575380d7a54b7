"""Command-line driver: every verification as a command with a JSON-lines report."""

from __future__ import annotations

import argparse
import sys
import time
from typing import Callable, Sequence

import mpmath

from qpi import congruences as cg
from qpi import identities as ids
from qpi import numerics as nm
from qpi import transforms as tf
from qpi import wz
from qpi.exactnum import is_prime
from qpi.parallel import pmap
from qpi.qseries import first_mismatch, product_spec_series
from qpi.report import Record, Report

DEFAULT_ORDER = 60
DEFAULT_PREC = 256


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# jobs: module-level so that a process pool can pickle them


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def job_identity(name: str, order: int) -> Record:
    rep = ids.verify_identity(ids.get(name), order)
    return Record(f"identity/{name}", dict(order=order), _status(rep.passed), rep.witness())


def job_wz_relation(family: str, which: str, n_max: int, k_min: int, k_max: int) -> Record:
    fam = wz.FAMILIES[family]
    pair = {"shifted": fam.shifted, "standard": fam.base, "explicit_standard": fam.explicit[0]}[which]
    rep = wz.check_relation(pair, n_max, k_min, k_max)
    params = dict(n_max=n_max, k_min=k_min, k_max=k_max, convention=pair.convention.value)
    return Record(f"wz/{family}/{which}_relation", params, _status(rep.passed), rep.witness())


def job_partial_sum(m: int) -> Record:
    rep = wz.check_partial_sum(wz.A1_PAIR, m)
    return Record(f"wz/wz_q1_family/partial_sum_m{m:02d}", dict(m=m), _status(rep.passed), rep.witness())


def job_k_independence(order: int) -> Record:
    fam = wz.FAMILIES["wz_q1_family"]
    rep = wz.check_k_independence(fam.explicit[0].F, ids.get("a1").rhs, [0, 1, 2, 3], order)
    return Record("wz/wz_q1_family/k_independence", dict(k=[0, 1, 2, 3], order=order),
                  _status(rep.passed), rep.witness())


def job_qinv_chain(n_max: int) -> Record:
    fam = wz.FAMILIES["wz_q3_family"]
    f2 = wz.guillera_iterate(fam.base).F
    rep = wz.check_qinv_chain(f2, ids.get("q3").summand, n_max)
    return Record("wz/wz_q3_family/qinv_chain", dict(n_max=n_max), _status(rep.passed), rep.witness())


def job_iterate(family: str, depth: int, order: int) -> list[Record]:
    fam = wz.FAMILIES[family]
    pairs = fam.iterates(depth + 1)
    out = []
    cells = wz.grid(6, 0, 6)
    for i in range(1, depth + 1):
        p = pairs[i]
        rep = wz.check_relation(p, 8, 0, 8)
        out.append(Record(f"iterate/{family}/depth{i}/relation", dict(n_max=8, k_min=0, k_max=8),
                          _status(rep.passed), rep.witness()))
        if i < len(fam.explicit):
            ex = fam.explicit[i]
            rf = wz.check_conformance(p.F, ex.F, cells)
            rg = wz.check_conformance(p.G, ex.G, cells)
            out.append(Record(f"iterate/{family}/depth{i}/conformance", dict(n_max=6, k_min=0, k_max=6),
                              _status(rf.passed and rg.passed), dict(F=rf.witness(), G=rg.witness())))
    if family == "wz_q1_family":
        rep = wz.check_sum_invariance([p.F for p in pairs], ids.get("a1").rhs, order)
        out.append(Record(f"iterate/{family}/sum_invariance", dict(order=order, depth=depth),
                          _status(rep.passed), rep.witness()))
    else:
        rep = wz.check_qinv_chain(pairs[1].F, ids.get("q3").summand, 10)
        out.append(Record(f"iterate/{family}/qinv_chain", dict(n_max=10), _status(rep.passed), rep.witness()))
    return out


def job_transform(p: tf.ParamSpec, order: int, index: int) -> Record:
    sp = tf.both_sides(p, order)
    mm = first_mismatch(sp.lhs, sp.rhs)
    witness: dict = dict(shift=sp.shift, rhs_zero=sp.rhs.is_zero())
    ok = mm is None
    if mm is not None:
        witness.update(first_mismatch=mm - sp.shift, lhs=str(sp.lhs[mm]), rhs=str(sp.rhs[mm]))
    if p.label:
        spec = ids.get(p.label)
        same_lhs = sp.shift == 0 and sp.lhs == ids.truncated_lhs(spec, order)
        same_rhs = sp.shift == 0 and sp.rhs == product_spec_series(spec.rhs, order)
        witness.update(reproduces=p.label, lhs_matches_registry=same_lhs, rhs_matches_registry=same_rhs)
        ok = ok and same_lhs and same_rhs
    if p.label:
        tail = f"identity_{p.label}"
    else:
        tail = "spec" if index < 0 else f"battery_{index:02d}"
    name = f"transform/{p.kind}/{tail}"
    return Record(name, dict(order=order, **p.as_dict()), _status(ok), witness)


def job_congruence(name: str, n: int) -> Record:
    if name == "cong_classical":
        reps = [cg.check_classical_supercongruence(n, v) for v in ("half", "full")]
        return Record(f"congruence/{name}/n{n:03d}", dict(p=n),
                      _status(all(r.passed for r in reps)), {r.variant: r.witness() for r in reps})
    rep = cg.check_q_congruence(cg.SPECS[name], n)
    return Record(f"congruence/{name}/n{n:03d}", dict(n=n), _status(rep.passed), rep.witness())


def job_numeric(name: str, q: str, prec: int, tol: float) -> Record:
    r = nm.eval_identity_numeric(name, q, nm.FloatCtx(prec))
    label, gap = r.best
    witness = dict(lhs=mpmath.nstr(r.lhs, 30), rhs=mpmath.nstr(r.rhs, 30), gap=mpmath.nstr(r.gap, 5))
    if len(r.candidate_gaps) > 1:
        witness["candidate_gaps"] = {k: mpmath.nstr(v, 5) for k, v in r.candidate_gaps.items()}
        witness["best"] = label
    return Record(f"numeric/{name}/q={q}", dict(q=q, prec_bits=prec, tolerance=tol),
                  _status(gap < tol), witness)


def job_pi(name: str, prec: int, terms: int | None) -> Record:
    r = nm.classical_pi_series(name, nm.FloatCtx(prec), terms)
    return Record(f"limit/{name}", dict(prec_bits=prec, terms=r.terms, method=r.method, tolerance=r.tolerance),
                  _status(r.passed), dict(value=mpmath.nstr(r.value, 30), gap=mpmath.nstr(r.gap, 5)))


def _run(job: tuple[Callable, tuple, str]) -> list[Record]:
    fn, args, label = job
    try:
        out = fn(*args)
    except Exception as exc:  # computational errors become records, never crashes
        return [Record(label, dict(args=[str(a) for a in args]), "error",
                       dict(error=type(exc).__name__, message=str(exc)))]
    return out if isinstance(out, list) else [out]


# --------------------------------------------------------------------------
# argument handling


def _names(value: str, known: Sequence[str], kind: str) -> list[str]:
    if value == "all":
        return list(known)
    if value not in known:
        raise UsageError(f"unknown {kind} {value!r}; known: {', '.join(known)} or all")
    return [value]


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--n-list expects comma-separated integers, got {text!r}") from None


def _parse_param_spec(kind: str, text: str) -> tf.ParamSpec:
    fields = {}
    for part in text.split(","):
        if "=" not in part:
            raise UsageError(f"--spec expects key=value pairs, got {part!r}")
        k, v = part.split("=", 1)
        fields[k.strip()] = v.strip()
    try:
        s = int(fields.pop("s", "1"))
        if kind == "quadratic":
            return tf.quad(fields.pop("a"), fields.pop("d"), fields.pop("b", "inf"), s)
        return tf.cubic(fields.pop("a"), fields.pop("c"), s)
    except (KeyError, ValueError) as exc:
        raise UsageError(f"bad --spec {text!r}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qpi", description="Exact verification of q-series identities for 1/pi.")
    ap.add_argument("--json", metavar="PATH", help="write the JSON-lines report here")
    top = ap.add_subparsers(dest="cmd", required=True)

    verify = top.add_parser("verify").add_subparsers(dest="what", required=True)
    p = verify.add_parser("identity")
    p.add_argument("name")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)

    p = verify.add_parser("wz")
    p.add_argument("family")
    p.add_argument("--nmax", type=int, default=10)
    p.add_argument("--kmin", type=int, default=-10)
    p.add_argument("--kmax", type=int, default=10)
    p.add_argument("--order", type=int, default=40, help="order for the k-independence check")

    p = verify.add_parser("iterate")
    p.add_argument("family")
    p.add_argument("--depth", type=int, choices=(1, 2), default=2)
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)

    p = verify.add_parser("transform")
    p.add_argument("kind", choices=("quadratic", "cubic"))
    g = p.add_mutually_exclusive_group()
    g.add_argument("--battery", action="store_true", help="run the built-in battery (default)")
    g.add_argument("--spec", help="e.g. a=q,d=-q,b=inf,s=2 or a=q,c=1,s=2")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)

    p = verify.add_parser("congruence")
    p.add_argument("name")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--n-list")
    g.add_argument("--n-max", type=int)

    ev = top.add_parser("eval").add_subparsers(dest="what", required=True)
    p = ev.add_parser("numeric")
    p.add_argument("name")
    p.add_argument("--q", required=True)
    p.add_argument("--prec-bits", type=int, default=DEFAULT_PREC)
    p.add_argument("--tol", type=float, help="gap tolerance (default 2^(-3P/4))")

    lim = top.add_parser("limit").add_subparsers(dest="what", required=True)
    p = lim.add_parser("pi")
    p.add_argument("name")
    p.add_argument("--prec-bits", type=int, default=DEFAULT_PREC)
    p.add_argument("--terms", type=int)
    return ap


def plan(args: argparse.Namespace) -> list[tuple[Callable, tuple, str]]:
    """Translate parsed arguments into independent jobs."""
    jobs: list[tuple[Callable, tuple, str]] = []
    if args.cmd == "verify" and args.what == "identity":
        if args.order < 1:
            raise UsageError("--order must be at least 1")
        for name in _names(args.name, list(ids.REGISTRY), "identity"):
            jobs.append((job_identity, (name, args.order), f"identity/{name}"))
    elif args.cmd == "verify" and args.what == "wz":
        for fam in _names(args.family, list(wz.FAMILIES), "family"):
            if wz.FAMILIES[fam].shifted is not None:
                jobs.append((job_wz_relation, (fam, "shifted", args.nmax, args.kmin, args.kmax), f"wz/{fam}/shifted"))
            jobs.append((job_wz_relation, (fam, "standard", args.nmax, args.kmin, args.kmax), f"wz/{fam}/standard"))
            jobs.append((job_wz_relation, (fam, "explicit_standard", args.nmax, args.kmin, args.kmax),
                         f"wz/{fam}/explicit_standard"))
            if fam == "wz_q1_family":
                jobs += [(job_partial_sum, (m,), f"wz/{fam}/partial_sum_m{m:02d}") for m in range(1, 9)]
                jobs.append((job_k_independence, (args.order,), f"wz/{fam}/k_independence"))
            else:
                jobs.append((job_qinv_chain, (10,), f"wz/{fam}/qinv_chain"))
    elif args.cmd == "verify" and args.what == "iterate":
        fam = _names(args.family, list(wz.FAMILIES), "family")
        for f in fam:
            jobs.append((job_iterate, (f, args.depth, args.order), f"iterate/{f}"))
    elif args.cmd == "verify" and args.what == "transform":
        if args.spec:
            p = _parse_param_spec(args.kind, args.spec)
            jobs.append((job_transform, (p, args.order, -1), f"transform/{args.kind}/spec"))
        else:
            for label, p in tf.IDENTITY_SPECIALIZATIONS.items():
                if p.kind == args.kind:
                    jobs.append((job_transform, (p, args.order, 0), f"transform/{args.kind}/identity_{label}"))
            for i, p in enumerate(tf.BATTERIES[args.kind]):
                jobs.append((job_transform, (p, args.order, i), f"transform/{args.kind}/battery_{i:02d}"))
    elif args.cmd == "verify" and args.what == "congruence":
        names = _names(args.name, list(cg.SPECS) + ["cong_classical"], "congruence")
        for name in names:
            for n in _congruence_ns(name, args):
                jobs.append((job_congruence, (name, n), f"congruence/{name}/n{n:03d}"))
    elif args.cmd == "eval":
        name = _names(args.name, list(ids.REGISTRY), "identity")
        try:
            q = nm.parse_q(args.q)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(str(exc)) from None
        tol = args.tol if args.tol is not None else float(mpmath.mpf(2) ** (-(3 * args.prec_bits) // 4))
        for n in name:
            jobs.append((job_numeric, (n, str(q), args.prec_bits, tol), f"numeric/{n}"))
    elif args.cmd == "limit":
        for n in _names(args.name, list(nm.PI_SERIES), "series"):
            jobs.append((job_pi, (n, args.prec_bits, args.terms), f"limit/{n}"))
    return jobs


def _congruence_ns(name: str, args: argparse.Namespace) -> list[int]:
    if name == "cong_classical":
        if args.n_list:
            ns = _int_list(args.n_list)
        elif args.n_max:
            ns = [p for p in range(5, args.n_max + 1) if is_prime(p)]
        else:
            ns = list(cg.DEFAULT_CLASSICAL_PRIMES)
        bad = [p for p in ns if not is_prime(p) or p <= 3]
        if bad:
            raise UsageError(f"cong_classical needs primes > 3, got {bad}")
        return ns
    spec = cg.SPECS[name]
    if args.n_list:
        ns = _int_list(args.n_list)
    elif args.n_max:
        ns = [n for n in range(2, args.n_max + 1) if spec.admissible(n)]
    else:
        ns = cg.DEFAULT_SWEEPS[name]
    bad = [n for n in ns if not spec.admissible(n)]
    if bad:
        raise UsageError(f"{name}: n values {bad} not admissible ({spec.admissible_text})")
    return ns


def render(report: Report) -> str:
    lines = []
    for r in report.records:
        extra = ""
        if r.status != "pass":
            extra = "  " + ", ".join(f"{k}={v}" for k, v in r.witness.items())
            if len(extra) > 300:
                extra = extra[:297] + "..."
        lines.append(f"{r.status.upper():5s} {r.name}{extra}")
    c = report.counts()
    lines.append(f"{c['pass']} passed, {c['fail']} failed, {c['error']} errors in {report.duration_s:.2f}s")
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        jobs = plan(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"qpi: error: {exc}", file=sys.stderr)
        return 2
    start = time.perf_counter()
    report = Report(argv)
    for recs in pmap(_run, jobs):
        report.records.extend(recs)
    report.sort()
    report.duration_s = time.perf_counter() - start
    print(render(report))
    if args.json:
        report.write(args.json)
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
