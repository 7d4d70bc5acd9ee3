"""Acceptance criteria, one test each, each printing a PASS/FAIL line."""
from __future__ import annotations

import time
from math import gcd

import numpy as np
import pytest

from conftest import record_criterion
from weberscan import golden
from weberscan.algebra import cyclotomic_poly, pgcd, prem, resultant_fp
from weberscan.arith import primes_in
from weberscan.genus import find_uniformizer, genus, regulator_rank, symbol_matrix, symbol_row, unit_system
from weberscan.layers import split_profile
from weberscan.scan import ScanJob, dumps, run_job
from weberscan.stickelberger import (annihilate, annihilator_test, build_setup, lam, measure_vector,
                                     measure_vector_oracle)


def _scan_pairs(nmin, nmax, budget, jobs=1):
    job = ScanJob(kind="torsion", n_values=tuple(range(nmin, nmax + 1)), budget=budget, jobs=jobs)
    recs = list(run_job(job))
    assert not [r for r in recs if "error" in r]
    return {(r["N"], r["p"], tuple(f)) for r in recs for f in r["factors"]}


@pytest.fixture(scope="module")
def window_rows():
    t0 = time.perf_counter()
    got = _scan_pairs(2, 60, 200_000)
    return got, time.perf_counter() - t0


@pytest.mark.long
def test_criterion_1_table_window_exact(window_rows):
    got, secs = window_rows
    expected = golden.table_window(60)
    missing, extra = sorted(expected - got), sorted(got - expected)
    ok = not missing and not extra
    record_criterion("1 table window N in [2,60], p <= 2e5/N, exact", ok,
                     f"{len(expected)} expected, missing {missing}, extra {extra}, {secs:.0f}s")
    assert not missing
    assert not extra, f"rows absent from the printed table: {extra}"


@pytest.mark.long
def test_criterion_1_supplement_extras_are_genuine(window_rows):
    """Every table row is found; any row beyond the table is confirmed by the direct kernel and
    the brute-force sum where it fits, and lies above the largest p the table prints."""
    got, _ = window_rows
    expected = golden.table_window(60)
    extra = sorted(got - expected)
    checks = []
    for N, p, co in extra:
        s = build_setup(N, p)
        direct = annihilator_test(measure_vector(s, "direct")).factors
        ok = list(co) in direct and p > golden.TABLE_MAX_P
        if s.f <= 10**6:
            ok &= list(co) in annihilator_test(measure_vector_oracle(s)).factors
        checks.append(ok)
    spot = annihilate(124, 5).factors == [[3, 2, 2, 1]]
    ok = expected <= got and all(checks) and spot and (10, 3, (1, 2, 1, 2, 1)) not in got
    record_criterion("1s table rows all found; extras confirmed by second route; (124,5) cubic", ok,
                     f"{len(extra)} extras above p={golden.TABLE_MAX_P}")
    assert ok


def test_criterion_2_negative_control():
    t0 = time.perf_counter()
    recs = list(run_job(ScanJob(kind="torsion", n_values=(7,), pmax=28_000)))
    ok = recs == []
    record_criterion("2 N=7 has no report for p <= 28000", ok, f"{time.perf_counter() - t0:.1f}s")
    assert ok


def test_criterion_3_corollary_pairs():
    bad = []
    t0 = time.perf_counter()
    for N, p, a in golden.COROLLARY_ROWS:
        if not split_profile(N, p).totally_split or annihilate(N, p).factors != [[a, 1]]:
            bad.append((N, p))
    ok = not bad
    record_criterion("3 corollary eight pairs, totally split, listed annihilator", ok,
                     f"failures {bad}, {time.perf_counter() - t0:.1f}s")
    assert ok


GENUS_CASES = [pytest.param(N, p, marks=pytest.mark.long) if N == 81 else (N, p)
               for N, p in sorted(golden.GENUS_RANKS)]


@pytest.mark.parametrize("N,p", GENUS_CASES)
def test_criterion_4_genus_ranks(N, p):
    sm = genus(N, p, route="ring")
    expected = golden.GENUS_RANKS[(N, p)]
    ok = sm.rank == expected
    if (N, p) == (3, 73):
        ok &= sm.genus_exponent == 1
    record_criterion(f"4 genus rank N={N} p={p}", ok, f"expected {expected}, got {sm.rank}")
    assert ok


def test_criterion_5_regulator_ranks():
    bad = {k: regulator_rank(*k) for k in golden.REGULATOR_RANKS}
    bad = {k: v for k, v in bad.items() if v != golden.REGULATOR_RANKS[k]}
    ok = not bad
    record_criterion(f"5 regulator ranks, all {len(golden.REGULATOR_RANKS)} rows", ok, f"mismatches {bad}")
    assert ok


def test_criterion_6a_lambda_reflection_and_range():
    rng = np.random.default_rng(6)
    n = bad = 0
    while n < 100_000:
        f, c, a = int(rng.integers(3, 10**6)), int(rng.integers(2, 100)), int(rng.integers(1, 10**6))
        a %= f
        if not a or gcd(c, f) != 1 or gcd(a, f) != 1:
            continue
        la = lam(a, c, f)
        bad += not (0 <= la <= c - 1 and lam(f - a, c, f) == c - 1 - la)
        n += 1
    record_criterion("6a lambda reflection and range on 1e5 triples", bad == 0, f"{bad} failures")
    assert bad == 0


def test_criterion_6b_oracle_equivalence():
    bad = []
    for N in range(2, 13):
        for p in primes_in(2, 50):
            if N % p:
                s = build_setup(N, p)
                if annihilator_test(measure_vector(s)).factors != annihilator_test(measure_vector_oracle(s)).factors:
                    bad.append((N, p))
    record_criterion("6b oracle detection equivalence N <= 12, p <= 50", not bad, f"mismatches {bad}")
    assert not bad


def test_criterion_6c_symbol_rows():
    bad = []
    for N in (2, 3, 9, 25):
        p = next(q for q in primes_in(3, 10**5) if N % q and split_profile(N, q).totally_split)
        us = unit_system(N, p)
        row = symbol_row(us, find_uniformizer(us))
        full = symbol_matrix(us, row, "full")  # raises NonCirculant on a mismatch
        if sum(row.entries) % p or full.rank != symbol_matrix(us, row, "circulant").rank:
            bad.append((N, p))
    record_criterion("6c symbol row sums zero and circulant equality N in {2,3,9,25}", not bad, f"{bad}")
    assert not bad


def test_criterion_6d_resultant_gcd_consistency():
    bad = n = 0
    for N in range(2, 31):
        phi_int = cyclotomic_poly(N)
        for p in primes_in(3, 2000):
            if N % p == 0:
                continue
            vec = measure_vector(build_setup(N, p))
            phi = [c % p for c in phi_int]
            s = prem([x % p for x in vec.coeffs], phi, p)
            res = resultant_fp(phi, s, p) if s else 0
            g = pgcd(s, phi, p) if s else phi
            bad += (res == 0) != (len(g) > 1)
            n += 1
    record_criterion("6d resultant/gcd consistency, N <= 30, p < 2000 (scan also asserts it per pair)", bad == 0, f"{n} pairs, {bad} failures")
    assert bad == 0


def test_criterion_6e_determinism_across_workers():
    base = dict(kind="torsion", n_values=tuple(range(2, 25)), budget=20_000)
    streams = {j: [dumps(r) for r in run_job(ScanJob(**base, jobs=j))] for j in (1, 2, 4)}
    ok = streams[1] == streams[2] == streams[4] and streams[1]
    record_criterion("6e byte-identical output for 1, 2 and 4 workers", bool(ok), f"{len(streams[1])} records")
    assert ok


def test_criterion_7_wieferich_stretch():
    t0 = time.perf_counter()
    rep = annihilate(1093, 2)
    ok = rep.degenerate and len(rep.factors) == 3
    record_criterion("7 (stretch) N=1093, p=2: S = 0 mod (2, Phi_1093)", ok,
                     f"{len(rep.factors)} factors of degree 364, {time.perf_counter() - t0:.1f}s")
    assert ok
