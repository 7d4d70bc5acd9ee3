from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st
from math import gcd

from weberscan.arith import is_prime_u64, primes_in
from weberscan.errors import NotCoprime, RamifiedPrime
from weberscan.layers import (LayerSpec, char_index, conductor, divisors, residue_degree_by_index,
                              split_profile)

LAYERS = [2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 25, 27, 40, 56, 60, 124]


def test_conductor_examples():
    assert conductor(3) == 9
    assert conductor(12) == 144
    assert conductor(2) == 8
    lay = LayerSpec(60)
    assert lay.conductor == 16 * 9 * 25
    assert [p.Q for p in lay.parts] == [16, 9, 25]


def test_char_index_generator_and_identity():
    lay = LayerSpec(3)
    h = lay.parts[0].gen
    assert char_index(1, lay) == 0
    assert char_index(h, lay) == 1
    with pytest.raises(NotCoprime):
        char_index(3, lay)


@pytest.mark.parametrize("N", LAYERS)
def test_char_index_homomorphism(N):
    lay = LayerSpec(N)
    f = lay.conductor
    rng = random.Random(N)
    units = [a for a in range(1, f) if gcd(a, f) == 1]
    for _ in range(10_000 if N <= 12 else 2_000):
        a, b = rng.choice(units), rng.choice(units)
        assert char_index(a * b % f, lay) == (char_index(a, lay) + char_index(b, lay)) % N


@pytest.mark.parametrize("N", [2, 4, 6, 12, 10, 3, 9])
def test_minus_one_is_in_kernel(N):
    lay = LayerSpec(N)
    assert char_index(lay.conductor - 1, lay) == 0


@pytest.mark.parametrize("N", [3, 4, 6, 9, 10])
def test_char_index_fibres_are_cosets(N):
    lay = LayerSpec(N)
    f = lay.conductor
    units = [a for a in range(1, f) if gcd(a, f) == 1]
    counts = [0] * N
    for a in units:
        counts[char_index(a, lay)] += 1
    assert len(set(counts)) == 1  # surjective with equal fibres
    kernel = {a for a in units if char_index(a, lay) == 0}
    assert all(a * b % f in kernel for a in kernel for b in list(kernel)[:20])


def test_split_examples():
    pr = split_profile(25, 2251)
    assert pr.totally_split and pr.s_p == 25
    pr = split_profile(2, 13)
    assert (pr.d_K, pr.s_p, pr.totally_split) == (2, 1, False)
    assert split_profile(81, 487).totally_split
    assert split_profile(3, 7).w_rank == 0
    assert split_profile(3, 2).w_rank == 0
    assert split_profile(1093, 2).w_rank == split_profile(1093, 2).s_p - 1 > 0
    with pytest.raises(RamifiedPrime):
        split_profile(6, 3)


@pytest.mark.parametrize("N", LAYERS + [16, 32, 81, 128])
def test_split_profile_two_routes(N):
    for p in primes_in(2, 3000):
        if N % p == 0:
            continue
        pr = split_profile(N, p)
        assert pr.s_p * pr.d_K == N
        assert pr.d_K == residue_degree_by_index(N, p)
        assert pr.totally_split == (char_index(p, LayerSpec(N)) == 0)
        assert (pr.rho_N == 1) == (p % N == 1)


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
