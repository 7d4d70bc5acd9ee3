"""NumPy implementations of the hot kernels, used when the compiled module is absent."""
from __future__ import annotations

import numpy as np

from .arith import inverse_table  # noqa: F401  (same signature as the compiled one)

NAME = "numpy"


def measure_direct(svals, exps, fN, p, c, lamtab, inv, N):
    """Twisted Stickelberger accumulation over a half-system.

    For each residue s mod fN (with exponent index e) this sums
    lamtab[x mod c] * inv[x mod p] over x = s + fN*k, k in [0, p).
    """
    out = np.zeros(N, dtype=np.int64)
    lamtab = np.asarray(lamtab, dtype=np.int64)
    k = np.arange(p, dtype=np.int64)
    step_p = fN % p
    base = k * step_p % p
    step_c = fN % c
    for s, e in zip(np.asarray(svals).tolist(), np.asarray(exps).tolist()):
        w = inv[(base + s % p) % p]
        t = 0
        for kappa in range(min(c, p)):
            r = (s + step_c * kappa) % c
            lam = int(lamtab[r])
            if lam:
                t += lam * (int(w[kappa::c].sum()) % p)
        out[e] = (int(out[e]) + t) % p
    return out


def _split_bits(m: int, n: int) -> int:
    # limb width so that n * (2^L)^2 stays below 2^62
    return max(1, (62 - max(1, n.bit_length())) // 2)


def polymul_mod(a, b, m):
    """Full product of two int64 coefficient arrays, reduced mod m."""
    n = max(len(a), len(b))
    if n * (m - 1) ** 2 < (1 << 63):
        return np.convolve(a, b) % m
    width = _split_bits(m, n)
    mask = (1 << width) - 1
    limbs = -(-m.bit_length() // width)
    al = [(a >> (width * i)) & mask for i in range(limbs)]
    bl = [(b >> (width * i)) & mask for i in range(limbs)]
    acc = np.zeros(len(a) + len(b) - 1, dtype=object)
    for i in range(limbs):
        for j in range(limbs):
            part = np.convolve(al[i], bl[j]).astype(object)
            acc += part * pow(2, width * (i + j), m)
    return np.array([int(x) % m for x in acc], dtype=np.int64)


def reduce_cyclo(buf, ell, block, m):
    """Reduce an array of residues mod x^f - 1 and then mod Phi_f, f = ell*block."""
    f = ell * block
    n = (ell - 1) * block
    if len(buf) > f:
        full = np.zeros(f, dtype=np.int64)
        full[: min(f, len(buf))] = buf[:f]
        tail = buf[f:]
        full[: len(tail)] = (full[: len(tail)] + tail) % m
        buf = full
    elif len(buf) < f:
        buf = np.concatenate([buf, np.zeros(f - len(buf), dtype=np.int64)])
    body = buf[:n].reshape(ell - 1, block)
    out = (body - buf[n:f][None, :]) % m
    return out.reshape(n)


def cyclo_mulmod(a, b, ell, block, m):
    return reduce_cyclo(polymul_mod(a, b, m), ell, block, m)


def class_prefix(p, c, g=0):
    """cum[t, r] = sum of b^-1 mod p over b = r + c*u < p, u < t."""
    rows = -(-p // c) + 1
    pad = np.zeros(rows * c, dtype=np.int64)
    pad[:p] = inverse_table(p)
    cum = np.zeros((rows + 1, c), dtype=np.int64)
    np.cumsum(pad.reshape(rows, c), axis=0, out=cum[1:])
    return cum
