"""Kernel dispatch: the compiled module when it imports, the NumPy one otherwise.

Set WEBERSCAN_PURE=1 to force the NumPy kernels.
"""
from __future__ import annotations

import os

import numpy as np

from . import _pure

if os.environ.get("WEBERSCAN_PURE"):
    _impl = _pure
else:
    try:
        from . import _native as _impl
    except ImportError:  # extension not built
        _impl = _pure

BACKEND = _impl.NAME


def _i64(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def measure_direct(svals, exps, fN, p, c, lamtab, inv, N):
    return _impl.measure_direct(_i64(svals), _i64(exps), int(fN), int(p), int(c),
                                _i64(lamtab), _i64(inv), int(N))


def cyclo_mulmod(a, b, ell, block, m):
    return _impl.cyclo_mulmod(_i64(a), _i64(b), int(ell), int(block), int(m))


def polymul_mod(a, b, m):
    return _impl.polymul_mod(_i64(a), _i64(b), int(m))


def inverse_table(p, g=0):
    return _impl.inverse_table(int(p), int(g)) if _impl is not _pure else _pure.inverse_table(int(p))


def class_prefix(p, c, g=0):
    """Prefix sums of inverses mod p along residue classes mod c; g is an optional primitive root."""
    return _impl.class_prefix(int(p), int(c), int(g))


def reduce_cyclo(buf, ell, block, m):
    return _pure.reduce_cyclo(_i64(buf), int(ell), int(block), int(m))


def addmod(a, b, m):
    s = a + b  # both < m <= 2^62, so no int64 overflow
    return np.where(s >= m, s - m, s)


def negmod(a, m):
    return np.where(a == 0, 0, m - a)
