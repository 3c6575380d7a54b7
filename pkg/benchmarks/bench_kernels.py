"""Compare the compiled kernels with the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--skip-end-to-end]
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit

from qpi import _pykernels
from qpi.qpoly import cyclotomic

try:
    from qpi import _ckernels
except ImportError:
    _ckernels = None


def _cases(rng: random.Random) -> dict[str, tuple[str, tuple]]:
    small = [rng.randint(-50, 50) for _ in range(400)]
    small2 = [rng.randint(-50, 50) for _ in range(400)]
    series = [rng.randint(-10**6, 10**6) for _ in range(2001)]
    phi = cyclotomic(35).int_coeffs
    cyclo = [(j, c) for j, c in enumerate(phi[:-1]) if c]
    return {
        "mul 400x400": ("mul", (small, small2)),
        "mul_trunc n=300": ("mul_trunc", (small, small2, 300)),
        "mul_binom n=2001": ("mul_binom", (series, 3, -1, 2001)),
        "div_binom n=2001": ("div_binom", (series, 5, 1, 2001)),
        "divmod_sparse Phi_35": ("divmod_sparse", (series, cyclo, len(phi) - 1)),
    }


def bench(repeat: int) -> list[tuple[str, float, float | None]]:
    rows = []
    for label, (fn, args) in _cases(random.Random(1)).items():
        py = min(timeit.repeat(lambda: getattr(_pykernels, fn)(*args), number=5, repeat=repeat)) / 5
        cy = None
        if _ckernels is not None:
            cy = min(timeit.repeat(lambda: getattr(_ckernels, fn)(*args), number=5, repeat=repeat)) / 5
        rows.append((label, py, cy))
    return rows


def end_to_end(pure: bool) -> float:
    env = dict(os.environ, QPI_PURE_PYTHON="1" if pure else "0")
    code = ("import time; from qpi import identities as ids; t = time.perf_counter(); "
            "[ids.verify_identity(s, 100) for s in ids.REGISTRY.values()]; print(time.perf_counter() - t)")
    out = subprocess.run([sys.executable, "-c", code], env=env, check=True, capture_output=True, text=True)
    return float(out.stdout.strip())


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-end-to-end", action="store_true")
    args = ap.parse_args()
    print(f"{'kernel':<24}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for label, py, cy in bench(args.repeat):
        cy_txt = f"{cy * 1e3:14.3f}{py / cy:9.1f}x" if cy else f"{'n/a':>14}{'':>10}"
        print(f"{label:<24}{py * 1e3:14.3f}{cy_txt}")
    if not args.skip_end_to_end:
        py, cy = end_to_end(True), end_to_end(False)
        print(f"{'identities to q^100':<24}{py * 1e3:14.1f}{cy * 1e3:14.1f}{py / cy:9.1f}x")


if __name__ == "__main__":
    main()
