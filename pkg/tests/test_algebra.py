from __future__ import annotations

import random

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy import GF, Poly, symbols

from weberscan.algebra import (
    CycloRingElem, ModPoly, circulant_rank, cyclotomic_by_division, cyclotomic_poly,
    equal_degree_factors, factor_cyclotomic_mod_p, pgcd, pmul, poly_gcd_fp, rank_mod_p,
    resultant_fp, ring_inv, ring_mul,
)
from weberscan.arith import multiplicative_order
from weberscan.errors import InvalidInput, NotAUnit, RamifiedPrime

X = symbols("x")
PRIMES = [2, 3, 5, 7, 11, 13, 31, 101]


def to_sympy(a, p):
    return Poly(list(reversed(a)) or [0], X, modulus=p)


def from_sympy(P, p):
    return [int(c) % p for c in reversed(P.all_coeffs())] if not P.is_zero else []


def polys(p, max_deg=8):
    return st.lists(st.integers(0, p - 1), max_size=max_deg + 1).map(
        lambda c: [x % p for x in c]).map(_trim)


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def test_cyclotomic_examples():
    assert cyclotomic_poly(1) == [-1, 1]
    assert cyclotomic_poly(8) == [1, 0, 0, 0, 1]
    assert cyclotomic_poly(12) == [1, 0, -1, 0, 1]


def test_cyclotomic_two_routes_agree():
    for n in range(1, 200):
        assert cyclotomic_poly(n) == cyclotomic_by_division(n)
        assert cyclotomic_poly(n) == [int(c) for c in reversed(sympy.cyclotomic_poly(n, X, polys=True).all_coeffs())]


def test_gcd_examples():
    assert poly_gcd_fp([4, 0, 1], [4, 1], 5) == [4, 1]
    assert poly_gcd_fp([1, 0, 0, 0, 1], [1, 1], 3) == [1]
    assert poly_gcd_fp([], [2, 1], 7) == [2, 1]


def test_resultant_examples():
    assert resultant_fp([1, 0, 1], [3, 1], 5) == 0
    assert resultant_fp([-1 % 7, 1], [6], 7) == 6
    with pytest.raises(InvalidInput):
        resultant_fp([], [], 7)


@given(st.sampled_from(PRIMES), st.data())
def test_gcd_and_resultant_match_sympy(p, data):
    a = data.draw(polys(p))
    b = data.draw(polys(p))
    g = poly_gcd_fp(a, b, p)
    if a or b:
        G = sympy.gcd(to_sympy(a, p), to_sympy(b, p))
        assert g == from_sympy(G.monic(), p)
    if a and len(a) > 1 and a[-1] == 1:
        R = sympy.resultant(to_sympy(a, p), to_sympy(b, p)) if b else 0
        assert resultant_fp(a, b, p) == int(R) % p


@given(st.sampled_from([3, 5, 7, 13]), st.data())
def test_gcd_and_resultant_multiplicative(p, data):
    a = data.draw(polys(p, 5))
    b = data.draw(polys(p, 5))
    c = data.draw(polys(p, 4))
    if not c or not (a or b):
        return
    lhs = poly_gcd_fp(pmul(a, c, p), pmul(b, c, p), p)
    rhs = poly_gcd_fp(pmul(poly_gcd_fp(a, b, p), c, p), [], p)
    assert lhs == rhs
    if len(a) > 1:
        am = [x * pow(a[-1], -1, p) % p for x in a]
        if b:
            assert resultant_fp(am, pmul(b, c, p), p) == resultant_fp(am, b, p) * resultant_fp(am, c, p) % p


def test_factor_examples():
    assert factor_cyclotomic_mod_p(4, 13) == [[5, 1], [8, 1]]
    assert factor_cyclotomic_mod_p(3, 2) == [[1, 1, 1]]
    assert factor_cyclotomic_mod_p(8, 3) == [[2, 1, 1], [2, 2, 1]]
    with pytest.raises(RamifiedPrime):
        factor_cyclotomic_mod_p(6, 3)


@pytest.mark.parametrize("n,p", [(5, 11), (7, 2), (9, 2), (11, 3), (13, 5), (21, 2), (40, 41),
                                 (56, 13), (124, 5), (1093, 2), (64, 7), (25, 2251)])
def test_factorization_properties(n, p):
    facs = factor_cyclotomic_mod_p(n, p)
    d = multiplicative_order(p % n, n)
    assert all(len(f) - 1 == d for f in facs)
    prod = [1]
    for f in facs:
        prod = pmul(prod, f, p)
    assert prod == [c % p for c in cyclotomic_poly(n)]
    assert len({tuple(f) for f in facs}) == len(facs)
    if n < 200:
        ref = sympy.factor_list(sympy.cyclotomic_poly(n, X), modulus=p)[1]
        assert sorted(from_sympy(Poly(f, X, modulus=p).monic(), p) for f, _ in ref) == facs


@pytest.mark.parametrize("n,p", [(4, 13), (40, 41), (52, 53), (16, 97), (9, 19)])
def test_fast_split_matches_general_path(n, p):
    fast = factor_cyclotomic_mod_p(n, p)
    general = equal_degree_factors(cyclotomic_poly(n, p), 1, p, seed=12345)
    assert sorted(fast) == sorted(general)


def test_modpoly_wrapper():
    a = ModPoly([1, 2, 3], 5)
    b = ModPoly([4, 1], 5)
    q, r = divmod(a * b + ModPoly([1], 5), b)
    assert (q * b + r) == a * b + ModPoly([1], 5)
    assert a(2) == (1 + 4 + 12) % 5


def test_ring_inverse_of_x():
    x = CycloRingElem([0, 1], 3, 49)
    assert ring_inv(x).coeffs() == [48, 48]
    assert (x * CycloRingElem.one(3, 49)) == x


@pytest.mark.parametrize("f,p", [(9, 73), (8, 31), (125, 2251), (27, 53), (16, 97)])
def test_ring_inverse_random_units(f, p):
    rng = random.Random(f * 1000 + p)
    one = CycloRingElem.one(f, p * p)
    n = CycloRingElem.one(f, p * p).dim
    done = 0
    while done < 1000 // (1 + f // 40):
        a = CycloRingElem([rng.randrange(p * p) for _ in range(n)], f, p * p)
        try:
            b = ring_inv(a)
        except NotAUnit:
            continue
        assert ring_mul(a, b) == one
        done += 1


def test_ring_inverse_thousand_units_small_ring():
    rng = random.Random(7)
    f, p = 9, 73
    one = CycloRingElem.one(f, p * p)
    done = 0
    while done < 1000:
        a = CycloRingElem([rng.randrange(p * p) for _ in range(6)], f, p * p)
        try:
            assert ring_inv(a) * a == one
            done += 1
        except NotAUnit:
            pass


def test_ring_non_unit():
    # x - r with r of order 9 mod 73 lies in a prime above 73
    p = 73
    r = pow(sympy.primitive_root(p), (p - 1) // 9, p)
    with pytest.raises(NotAUnit):
        ring_inv(CycloRingElem([-r, 1], 9, p * p))


@given(st.sampled_from([5, 7, 13]), st.lists(st.lists(st.integers(0, 12), min_size=4, max_size=4),
                                               min_size=1, max_size=5))
def test_rank_matches_sympy(p, rows):
    assert rank_mod_p(rows, p) == _rank_gf(rows, p)


def _rank_gf(rows, p):
    from sympy.polys.matrices import DomainMatrix
    return DomainMatrix([[GF(p)(x) for x in r] for r in rows], (len(rows), len(rows[0])), GF(p)).rank()


@given(st.sampled_from([7, 11, 13]), st.lists(st.integers(0, 6), min_size=2, max_size=6))
def test_circulant_rank_matches_elimination(p, row):
    n = len(row)
    full = [[row[(k - j) % n] for k in range(n)] for j in range(n)]
    if n % p:
        assert circulant_rank(row, p) == rank_mod_p(full, p)
