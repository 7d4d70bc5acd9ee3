"""Compiled vs NumPy kernels on identical inputs; checks the outputs agree, then times both.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from weberscan import _pure
from weberscan.stickelberger import build_setup, half_system, lambda_table

try:
    from weberscan import _native
except ImportError:
    _native = None


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def _same(a, b):
    return np.array_equal(np.asarray(a), np.asarray(b))


def cases():
    s = build_setup(37, 4441)
    svals, exps = half_system(s)
    svals = svals.astype(np.int64)
    lamtab = lambda_table(s.c, s.f)
    inv = _pure.inverse_table(s.p)
    yield ("measure_direct N=37 p=4441",
           lambda m: m.measure_direct(svals, exps, s.f_N, s.p, s.c, lamtab, inv, s.N))

    rng = np.random.default_rng(0)
    ell, m = 1093, 2**61 - 1
    a = rng.integers(0, m, ell - 1, dtype=np.int64)
    b = rng.integers(0, m, ell - 1, dtype=np.int64)
    yield (f"cyclo_mulmod ell={ell} m=2^61-1", lambda mod: mod.cyclo_mulmod(a, b, ell, 1, m))

    p, c = 1_000_003, 7
    yield (f"class_prefix p={p} c={c}", lambda mod: mod.class_prefix(p, c))
    yield (f"inverse_table p={p}", lambda mod: mod.inverse_table(p))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _native is None:
        print("compiled module not built; only the NumPy kernels are available")
        return 1
    print(f"{'kernel':40s} {'compiled s':>11s} {'numpy s':>11s} {'speedup':>8s}  agree")
    ok = True
    for name, run in cases():
        tn, on = _best(lambda: run(_native), args.repeat)
        tp, op = _best(lambda: run(_pure), args.repeat)
        agree = _same(on, op)
        ok &= agree
        print(f"{name:40s} {tn:11.4f} {tp:11.4f} {tp / tn:7.1f}x  {agree}")
    return 0 if ok else 2


if __name__ == "__main__":
    raise SystemExit(main())
