from __future__ import annotations

from math import gcd

import numpy as np
import pytest
from hypothesis import given, strategies as st

from weberscan.arith import primes_in
from weberscan.errors import InternalInconsistency, NotCoprime, OracleScaleExceeded, RamifiedPrime
from weberscan.layers import LayerSpec, char_index
from weberscan.stickelberger import (
    PBound, annihilate, annihilator_test, build_setup, lam, lambda_table, measure_vector,
    measure_vector_oracle, scan_torsion,
)


def test_lambda_examples():
    assert lam(7, 3, 20) == 1
    assert lam(13, 3, 20) == 1
    assert all(lam(a, 1, 20) == 0 for a in range(1, 20) if gcd(a, 20) == 1)
    with pytest.raises(NotCoprime):
        lam(5, 3, 20)
    with pytest.raises(NotCoprime):
        lam(7, 2, 20)


def test_lambda_reflection_and_range_1e5():
    rng = np.random.default_rng(2024)
    checked = 0
    while checked < 100_000:
        f = int(rng.integers(3, 10**6))
        c = int(rng.integers(2, 60))
        a = int(rng.integers(1, f))
        if gcd(c, f) != 1 or gcd(a, f) != 1:
            continue
        la = lam(a, c, f)
        assert 0 <= la <= c - 1
        assert lam(f - a, c, f) == c - 1 - la
        checked += 1


@given(st.integers(3, 10**5), st.integers(2, 40), st.integers(1, 10**5))
def test_lambda_table_matches_definition(f, c, a):
    a = a % f or 1
    if gcd(c, f) != 1 or gcd(a, f) != 1:
        return
    assert lambda_table(c, f)[a % c] == lam(a, c, f)


def test_multiplier_policy():
    assert build_setup(3, 7).c == 2
    assert build_setup(8, 3).c == 5
    s = build_setup(10, 3)
    assert char_index(s.c, LayerSpec(10)) != 0
    assert char_index(7, LayerSpec(10)) == 0  # the multiplier that produced the spurious row
    assert "c advanced" in build_setup(10, 3, c_hint=7).caveats[0]
    with pytest.raises(RamifiedPrime):
        build_setup(6, 3)


def test_generators_are_adjusted():
    s = build_setup(60, 7)
    for h, part in zip(s.part_gens, s.layer.parts):
        assert h % part.Q == part.gen % part.Q
        assert h % (s.f // part.Q) == 1
    assert s.g % s.f_N == 1


@pytest.mark.parametrize("N,p,expected", [
    (2, 13, [[1, 1]]), (3, 7, [[5, 1]]), (4, 13, [[5, 1]]), (5, 11, [[7, 1], [8, 1]]),
    (6, 7, [[2, 1]]), (8, 3, [[2, 1, 1]]), (15, 31, [[11, 1], [22, 1]]), (124, 5, [[3, 2, 2, 1]]),
    (7, 29, []), (10, 3, []),
])
def test_annihilator_examples(N, p, expected):
    assert annihilate(N, p).factors == expected


def test_classsum_matches_direct():
    for N, p in [(3, 7), (8, 521), (15, 1291), (25, 2251), (124, 373), (12, 13), (60, 61), (7, 29)]:
        s = build_setup(N, p)
        assert measure_vector(s, "classsum").coeffs == measure_vector(s, "direct").coeffs


def test_oracle_detection_equivalence_small():
    for N in range(2, 13):
        for p in primes_in(2, 50):
            if N % p == 0:
                continue
            s = build_setup(N, p)
            fast = annihilator_test(measure_vector(s)).factors
            direct = annihilator_test(measure_vector(s, "direct")).factors
            oracle = annihilator_test(measure_vector_oracle(s)).factors
            assert fast == direct == oracle, (N, p)


def test_oracle_without_correction_is_not_equivalent():
    # the literal interval needs the (1 - c)/2 term; without it these pairs give extra factors
    for N, p in [(5, 31), (11, 23)]:
        s = build_setup(N, p)
        assert annihilator_test(measure_vector(s)).factors == []
        assert annihilator_test(measure_vector_oracle(s, correction=False)).factors != []


def test_oracle_scale_guard():
    with pytest.raises(OracleScaleExceeded):
        measure_vector_oracle(build_setup(81, 238627))


def test_oracle_examples():
    assert annihilator_test(measure_vector_oracle(build_setup(4, 13))).factors == [[5, 1]]
    assert annihilator_test(measure_vector_oracle(build_setup(6, 7))).factors == [[2, 1]]


@given(st.sampled_from([(3, 7), (5, 11), (7, 29), (8, 3), (12, 13)]), st.integers(1, 10**6))
def test_scalar_robustness(pair, k):
    s = build_setup(*pair)
    vec = measure_vector(s)
    k = k % s.p or 1
    assert annihilator_test(vec.scaled(k)).factors == annihilator_test(vec).factors


def test_resultant_gcd_consistency_is_enforced():
    rep = annihilate(5, 11)
    assert rep.resultant == 0 and rep.factors
    rep = annihilate(7, 29)
    assert rep.resultant != 0 and not rep.factors


def test_scan_small_window():
    got = [(r.N, r.p, r.factors) for r in scan_torsion(range(2, 9), PBound(pmax=600))]
    assert got == [
        (2, 13, [[1, 1]]), (2, 31, [[1, 1]]), (3, 7, [[5, 1]]), (3, 73, [[9, 1]]),
        (4, 13, [[5, 1]]), (4, 29, [[12, 1]]), (4, 37, [[31, 1]]), (5, 11, [[7, 1], [8, 1]]),
        (6, 7, [[2, 1]]), (6, 13, [[9, 1]]), (6, 43, [[36, 1]]), (8, 3, [[2, 1, 1]]),
        (8, 521, [[206, 1]]),
    ]


def test_scan_split_filter_for_quadratic_layer():
    got = [r.p for r in scan_torsion([2], PBound(pmax=20000), "split-K")]
    assert got == [31]
    assert annihilate(2, 1546463).factors == [[1, 1]]


def test_empty_range():
    assert scan_torsion([], PBound(pmax=100)) == []


def test_wieferich_layer_p2_all_factors_divide():
    rep = annihilate(1093, 2)
    assert rep.degenerate
    assert len(rep.factors) == 3 and all(len(f) == 365 for f in rep.factors)


def test_p2_control_layers():
    assert annihilate(5, 2).factors == []
    assert annihilate(7, 2).factors == []
