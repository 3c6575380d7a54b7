"""Pure-Python polynomial kernels.

All routines work on plain lists of Python ints, lowest degree first.  They
are the reference implementation; ``_ckernels`` must agree with them
exactly.
"""

from __future__ import annotations

# Below this size schoolbook beats the packing overhead of Kronecker
# substitution.
_KRONECKER_MIN = 40


def _schoolbook(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * n
    for i, x in enumerate(a):
        if not x:
            continue
        lim = min(len(b), n - i)
        for j in range(lim):
            out[i + j] += x * b[j]
    return out


def _pack(a: list[int], nbytes: int) -> int:
    pos = b"".join((x if x > 0 else 0).to_bytes(nbytes, "little") for x in a)
    neg = b"".join((-x if x < 0 else 0).to_bytes(nbytes, "little") for x in a)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _kronecker(a: list[int], b: list[int], n: int) -> list[int]:
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    if not ma or not mb:
        return [0] * n
    bits = (ma * mb * min(len(a), len(b))).bit_length() + 2
    nbytes = (bits + 7) // 8
    prod = _pack(a, nbytes) * _pack(b, nbytes)
    m = len(a) + len(b) - 1
    half = 1 << (8 * nbytes - 1)
    offset = int.from_bytes(half.to_bytes(nbytes, "little") * m, "little")
    raw = (prod + offset).to_bytes(nbytes * m + 1, "little")
    out = [
        int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half
        for i in range(min(m, n))
    ]
    out.extend([0] * (n - len(out)))
    return out


def mul_trunc(a: list[int], b: list[int], n: int) -> list[int]:
    """Coefficients of ``a*b`` in degrees ``0..n-1``."""
    if n <= 0:
        return []
    a = a[:n]
    b = b[:n]
    if not a or not b:
        return [0] * n
    if min(len(a), len(b)) < _KRONECKER_MIN:
        return _schoolbook(a, b, n)
    return _kronecker(a, b, n)


def mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    return mul_trunc(a, b, len(a) + len(b) - 1)


def mul_binom(a: list[int], c: int, s: int, n: int = -1) -> list[int]:
    """``a * (1 - s*q**c)``, truncated to length ``n`` when ``n >= 0``."""
    size = len(a) + c if n < 0 else n
    out = a[:size] + [0] * max(0, size - len(a))
    for i in range(min(len(a), size - c)):
        x = a[i]
        if x:
            out[i + c] -= s * x
    return out


def div_binom(a: list[int], c: int, s: int, n: int) -> list[int]:
    """Power series ``a / (1 - s*q**c)`` through length ``n``."""
    out = a[:n] + [0] * max(0, n - len(a))
    if s == 1:
        for i in range(c, n):
            out[i] += out[i - c]
    else:
        for i in range(c, n):
            out[i] -= out[i - c]
    return out


def exact_div_binom(a: list[int], c: int, s: int) -> list[int] | None:
    """Polynomial quotient ``a / (1 - s*q**c)`` or None if it leaves a remainder."""
    d = len(a) - 1 - c
    if d < 0:
        return None if any(a) else []
    u = a[:d + 1]
    for i in range(c, d + 1):
        u[i] += s * u[i - c]
    for i in range(d + 1, len(a)):
        if a[i] != (-s * u[i - c] if i >= c else 0):
            return None
    return u


def divmod_sparse(a: list[int], terms: list[tuple[int, int]], d: int) -> tuple[list[int], list[int]]:
    """Divide by the monic polynomial ``q**d + sum(t*q**j for j, t in terms)``."""
    if len(a) <= d:
        return [], a[:]
    r = a[:]
    quot = [0] * (len(a) - d)
    for i in range(len(a) - 1, d - 1, -1):
        x = r[i]
        if x:
            base = i - d
            quot[base] = x
            for j, t in terms:
                r[base + j] -= x * t
    return quot, r[:d]


def eval_mod(a: list[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc
