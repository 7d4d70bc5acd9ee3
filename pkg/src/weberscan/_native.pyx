# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: half-system accumulation and multiplication mod (m, Phi_f)."""
import numpy as np

ctypedef unsigned long long u64
ctypedef long long i64

cdef extern from *:
    ctypedef unsigned long long u128 "__uint128_t"

NAME = "cython"


def measure_direct(const i64[:] svals, const i64[:] exps, i64 fN, i64 p, i64 c, const i64[:] lamtab, const i64[:] inv, int N):
    cdef i64[:] out = np.zeros(N, dtype=np.int64)
    cdef u64[:] acc = np.zeros(c, dtype=np.uint64)
    cdef i64 step_p = fN % p, step_c = fN % c
    cdef Py_ssize_t idx, k, r, j
    cdef i64 s, b, rc
    cdef u64 t
    for idx in range(svals.shape[0]):
        s = svals[idx]
        b = s % p
        rc = s % c
        for j in range(c):
            acc[j] = 0
        for k in range(p):
            acc[rc] += <u64>inv[b]
            b += step_p
            if b >= p:
                b -= p
            rc += step_c
            if rc >= c:
                rc -= c
        t = 0
        for j in range(c):
            t = (t + <u64>lamtab[j] * (acc[j] % <u64>p)) % <u64>p
        j = exps[idx]
        out[j] = <i64>((<u64>out[j] + t) % <u64>p)
    return np.asarray(out)


def polymul_mod(const i64[:] a, const i64[:] b, i64 m):
    cdef Py_ssize_t na = a.shape[0], nb = b.shape[0]
    cdef Py_ssize_t n = na + nb - 1
    cdef i64[:] out = np.zeros(n, dtype=np.int64)
    cdef u128 acc, mm = <u128>m
    cdef u128 bound = <u128>(m - 1) * <u128>(m - 1)
    cdef u128 limit
    cdef Py_ssize_t i, k, lo, hi, cnt, cap
    # number of products that can be summed without overflowing 128 bits
    if bound == 0:
        cap = na + nb
    else:
        limit = (<u128>0 - 1) // bound
        cap = <Py_ssize_t>limit if limit < <u128>(na + nb) else na + nb
    for k in range(n):
        lo = k - nb + 1 if k >= nb else 0
        hi = k if k < na else na - 1
        acc = 0
        cnt = 0
        for i in range(lo, hi + 1):
            acc += <u128>a[i] * <u128>b[k - i]
            cnt += 1
            if cnt >= cap:
                acc %= mm
                cnt = 1
        out[k] = <i64>(acc % mm)
    return np.asarray(out)


def cyclo_mulmod(const i64[:] a, const i64[:] b, int ell, i64 block, i64 m):
    cdef const i64[:] full = polymul_mod(a, b, m)
    cdef Py_ssize_t f = ell * block, n = (ell - 1) * block
    cdef i64[:] buf = np.zeros(f, dtype=np.int64)
    cdef i64[:] out = np.zeros(n, dtype=np.int64)
    cdef Py_ssize_t i, j
    cdef i64 v
    for i in range(full.shape[0]):
        j = i % f
        v = buf[j] + full[i]
        if v >= m:
            v -= m
        buf[j] = v
    for i in range(n):
        v = buf[i] - buf[n + i % block]
        if v < 0:
            v += m
        out[i] = v
    return np.asarray(out)


cdef inline i64 _mulmod(i64 a, i64 b, i64 p, double pinv) noexcept nogil:
    # a, b < p < 2^31: the double quotient is off by at most one
    cdef i64 q = <i64>(<double>a * <double>b * pinv)
    cdef i64 r = a * b - q * p
    while r < 0:
        r += p
    while r >= p:
        r -= p
    return r


def inverse_table(i64 p, i64 g=0):
    """inv[b] = b^-1 mod p, inv[0] = 0. With a primitive root g, inv[g^k] = g^(p-1-k)."""
    cdef i64[:] inv = np.zeros(p, dtype=np.int64)
    cdef i64 b, x, y, gi, k
    cdef double pinv = 1.0 / <double>p
    if p > 1:
        inv[1] = 1
    if g == 0:
        for b in range(2, p):
            inv[b] = (p - (p // b) * inv[p % b] % p) % p
        return np.asarray(inv)
    gi = pow(int(g), int(p - 2), int(p))
    x = 1
    y = 1
    for k in range(p - 1):
        inv[x] = y
        x = _mulmod(x, g, p, pinv)
        y = _mulmod(y, gi, p, pinv)
    return np.asarray(inv)


def class_prefix(i64 p, i64 c, i64 g=0):
    """cum[t, r] = sum of b^-1 mod p over b = r + c*u < p, u < t."""
    cdef i64 rows = (p + c - 1) // c + 1
    cdef i64[:] inv = inverse_table(p, g)
    out = np.zeros((rows + 1) * c, dtype=np.int64)
    cdef i64[:] cum = out
    cdef i64 b
    for b in range(p):
        cum[b + c] = cum[b] + inv[b]
    for b in range(p, rows * c):
        cum[b + c] = cum[b]
    return out.reshape(rows + 1, c)
