# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled polynomial kernels.

Each routine first tries a signed 64-bit path with overflow detection and
drops to the pure-Python kernel when a coefficient leaves the int64 range.
Results are identical to ``_pykernels``.
"""

from libc.stdlib cimport malloc, free

from qpi import _pykernels as _py

cdef extern from *:
    """
    static inline int qpi_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int qpi_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int qpi_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    /* r = a + s*b for s = +-1 */
    static inline int qpi_axpy_ovf(long long a, long long s, long long b, long long *r) {
        return s == 1 ? __builtin_add_overflow(a, b, r) : __builtin_sub_overflow(a, b, r);
    }
    static inline unsigned long long qpi_mulmod(unsigned long long a,
                                                unsigned long long b,
                                                unsigned long long p) {
        return (unsigned long long)(((unsigned __int128)a * b) % p);
    }
    """
    bint qpi_add_ovf(long long a, long long b, long long *r) nogil
    bint qpi_mul_ovf(long long a, long long b, long long *r) nogil
    bint qpi_sub_ovf(long long a, long long b, long long *r) nogil
    bint qpi_axpy_ovf(long long a, long long s, long long b, long long *r) nogil
    unsigned long long qpi_mulmod(unsigned long long a, unsigned long long b,
                                  unsigned long long p) nogil

cdef long long LIM = (1 << 62)

# schoolbook in C wins below roughly this many coefficient products
cdef Py_ssize_t SCHOOLBOOK_MAX = 4000000


cdef long long* _load(list a, Py_ssize_t n) except? NULL:
    """Copy ``a`` (zero padded to ``n``) into a fresh buffer; NULL if a value is too wide."""
    cdef long long* buf = <long long*> malloc(max(n, 1) * sizeof(long long))
    cdef Py_ssize_t i, m = min(len(a), n)
    if buf == NULL:
        raise MemoryError()
    for i in range(m):
        x = a[i]
        if not -LIM < x < LIM:
            free(buf)
            return NULL
        buf[i] = x
    for i in range(m, n):
        buf[i] = 0
    return buf


cdef list _dump(long long* buf, Py_ssize_t n):
    return [buf[i] for i in range(n)]


def mul_trunc(list a, list b, Py_ssize_t n):
    if n <= 0:
        return []
    cdef Py_ssize_t la = min(len(a), n), lb = min(len(b), n)
    if la == 0 or lb == 0:
        return [0] * n
    if la * lb > SCHOOLBOOK_MAX:
        return _py.mul_trunc(a, b, n)
    cdef long long* pa = _load(a, la)
    if pa == NULL:
        return _py.mul_trunc(a, b, n)
    cdef long long* pb = _load(b, lb)
    if pb == NULL:
        free(pa)
        return _py.mul_trunc(a, b, n)
    cdef long long* out = <long long*> malloc(n * sizeof(long long))
    cdef Py_ssize_t i, j, lim
    cdef long long x, t
    cdef bint bad = False
    for i in range(n):
        out[i] = 0
    with nogil:
        for i in range(la):
            x = pa[i]
            if x == 0:
                continue
            lim = min(lb, n - i)
            for j in range(lim):
                if qpi_mul_ovf(x, pb[j], &t) or qpi_add_ovf(out[i + j], t, &out[i + j]):
                    bad = True
                    break
            if bad:
                break
    free(pa)
    free(pb)
    if bad:
        free(out)
        return _py.mul_trunc(a, b, n)
    res = _dump(out, n)
    free(out)
    return res


def mul(list a, list b):
    if not a or not b:
        return []
    return mul_trunc(a, b, len(a) + len(b) - 1)


def mul_binom(list a, Py_ssize_t c, long long s, Py_ssize_t n=-1):
    cdef Py_ssize_t size = len(a) + c if n < 0 else n
    cdef long long* buf = _load(a, size)
    if buf == NULL:
        return _py.mul_binom(a, c, s, n)
    cdef Py_ssize_t i, m = min(len(a), size - c)
    cdef bint bad = False
    cdef long long t
    with nogil:
        # descending so buf[i] still holds the original coefficient
        for i in range(m - 1, -1, -1):
            if buf[i] != 0:
                if qpi_add_ovf(buf[i + c], -s * buf[i], &t):
                    bad = True
                    break
                buf[i + c] = t
    if bad:
        free(buf)
        return _py.mul_binom(a, c, s, n)
    res = _dump(buf, size)
    free(buf)
    return res


def div_binom(list a, Py_ssize_t c, long long s, Py_ssize_t n):
    cdef long long* buf = _load(a, n)
    if buf == NULL:
        return _py.div_binom(a, c, s, n)
    cdef Py_ssize_t i
    cdef bint bad = False
    with nogil:
        for i in range(c, n):
            if qpi_axpy_ovf(buf[i], s, buf[i - c], &buf[i]):
                bad = True
                break
    if bad:
        free(buf)
        return _py.div_binom(a, c, s, n)
    res = _dump(buf, n)
    free(buf)
    return res


def exact_div_binom(list a, Py_ssize_t c, long long s):
    cdef Py_ssize_t d = len(a) - 1 - c
    if d < 0:
        return None if any(a) else []
    cdef long long* buf = _load(a, len(a))
    if buf == NULL:
        return _py.exact_div_binom(a, c, s)
    cdef Py_ssize_t i
    cdef long long t
    cdef bint bad = False, fail = False
    with nogil:
        for i in range(c, d + 1):
            if qpi_axpy_ovf(buf[i], s, buf[i - c], &buf[i]):
                bad = True
                break
        if not bad:
            # remainder vanishes iff a[i] + s*u[i-c] == 0 for the top c slots
            for i in range(d + 1, d + 1 + c):
                if i < c:
                    t = buf[i]
                elif qpi_axpy_ovf(buf[i], s, buf[i - c], &t):
                    fail = True
                    break
                if t != 0:
                    fail = True
                    break
    if bad:
        free(buf)
        return _py.exact_div_binom(a, c, s)
    if fail:
        free(buf)
        return None
    res = _dump(buf, d + 1)
    free(buf)
    return res


def divmod_sparse(list a, list terms, Py_ssize_t d):
    cdef Py_ssize_t la = len(a)
    if la <= d:
        return [], a[:]
    cdef Py_ssize_t nt = len(terms)
    cdef long long* r = _load(a, la)
    if r == NULL:
        return _py.divmod_sparse(a, terms, d)
    cdef long long* tj = <long long*> malloc(max(nt, 1) * sizeof(long long))
    cdef long long* tc = <long long*> malloc(max(nt, 1) * sizeof(long long))
    cdef Py_ssize_t i, j, base
    for j in range(nt):
        tj[j] = terms[j][0]
        tc[j] = terms[j][1]
    cdef long long* quot = <long long*> malloc((la - d) * sizeof(long long))
    cdef long long x, t
    cdef bint bad = False
    with nogil:
        for i in range(la - d):
            quot[i] = 0
        for i in range(la - 1, d - 1, -1):
            x = r[i]
            if x != 0:
                base = i - d
                quot[base] = x
                for j in range(nt):
                    if qpi_mul_ovf(x, tc[j], &t) or qpi_sub_ovf(r[base + tj[j]], t, &r[base + tj[j]]):
                        bad = True
                        break
                if bad:
                    break
    free(tj)
    free(tc)
    if bad:
        free(r)
        free(quot)
        return _py.divmod_sparse(a, terms, d)
    res = (_dump(quot, la - d), _dump(r, d))
    free(r)
    free(quot)
    return res


def eval_mod(list a, x, p):
    if p >= (1 << 63) or p <= 1:
        return _py.eval_mod(a, x, p)
    cdef unsigned long long P = p, X = x % p, acc = 0, c
    cdef Py_ssize_t i
    for i in range(len(a) - 1, -1, -1):
        c = a[i] % p
        acc = (qpi_mulmod(acc, X, P) + c) % P
    return acc
