from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from weberscan import _pure, kernels
from weberscan.stickelberger import build_setup, half_system, lambda_table

native = pytest.importorskip("weberscan._native")


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "numpy")


@given(st.sampled_from([7, 97, 2251, 2**31 - 1, (2**31 - 1) ** 2, 2**62 - 57]),
       st.integers(1, 40), st.integers(0, 2**32))
def test_polymul_parity(m, n, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, min(m, 2**62), n, dtype=np.int64) % m
    b = rng.integers(0, min(m, 2**62), n + 3, dtype=np.int64) % m
    ref = [int(x) for x in np.convolve(a.astype(object), b.astype(object)) % m]
    assert list(native.polymul_mod(a, b, m)) == ref
    assert list(_pure.polymul_mod(a, b, m)) == ref


@pytest.mark.parametrize("f", [8, 9, 16, 25, 27, 125, 243, 1024])
def test_cyclo_mulmod_parity(f):
    from weberscan.algebra import _prime_power
    ell, block = _prime_power(f)
    n = (ell - 1) * block
    rng = np.random.default_rng(f)
    for m in (73 * 73, 1546463**2):
        a = rng.integers(0, m, n, dtype=np.int64)
        b = rng.integers(0, m, n, dtype=np.int64)
        assert np.array_equal(native.cyclo_mulmod(a, b, ell, block, m), _pure.cyclo_mulmod(a, b, ell, block, m))


@pytest.mark.parametrize("p", [3, 7, 101, 7919, 100003])
def test_inverse_table_parity(p):
    t = native.inverse_table(p)
    assert np.array_equal(t, _pure.inverse_table(p))
    from weberscan.arith import primitive_root
    assert np.array_equal(native.inverse_table(p, primitive_root(p)), t)


@pytest.mark.parametrize("p,c", [(7, 2), (101, 3), (7919, 5), (100003, 11)])
def test_class_prefix_parity(p, c):
    assert np.array_equal(np.asarray(native.class_prefix(p, c)), _pure.class_prefix(p, c))


@pytest.mark.parametrize("N,p", [(3, 7), (4, 13), (8, 521), (15, 31), (12, 13)])
def test_measure_direct_parity(N, p):
    s = build_setup(N, p)
    sv, ex = half_system(s)
    args = (sv.astype(np.int64), ex, s.f_N, p, s.c, lambda_table(s.c, s.f), _pure.inverse_table(p), N)
    assert list(native.measure_direct(*args)) == list(_pure.measure_direct(*args))
