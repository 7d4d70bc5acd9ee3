"""Twisted Stickelberger measures and the annihilator test for the p-torsion of Q(N).

For a layer Q(N) and a prime p not dividing N, the measure is

    S(x) = sum_{a in H} lambda_a(c) * (a^-1 mod p) * x^index(a)   (mod p)

over a half-system H of (Z/f)^x, f = q * f_N, q = p (or 4 when p = 2). A monic
irreducible factor R of Phi_N mod p divides S exactly when the matching
character component of the p-torsion group is non-trivial.
"""
from __future__ import annotations

import time
from functools import lru_cache
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable

import numpy as np

from . import kernels
from .algebra import cyclotomic_poly, pgcd, prem, resultant_fp, split_divisor_of_cyclotomic
from .arith import crt, is_prime_u64, primes_in, primitive_root, totient
from .errors import (InternalInconsistency, InvalidInput, NotCoprime, OracleScaleExceeded, RamifiedPrime,
                     WeberScanError)
from .layers import LayerSpec, char_index, split_profile

P_MAX = 1 << 31
F_MAX = 1 << 62
ORACLE_F_MAX = 10**6


@dataclass(frozen=True)
class TwistSetup:
    layer: LayerSpec
    p: int
    q: int
    f: int
    c: int
    part_gens: tuple  # adjusted generators h_i: gen mod Q_i, 1 mod f/Q_i
    g: int  # primitive root mod q, lifted to be 1 mod f_N
    caveats: tuple = ()

    @property
    def N(self) -> int:
        return self.layer.N

    @property
    def f_N(self) -> int:
        return self.f // self.q

    def half_system_size(self) -> int:
        return totient(self.f) // 2

    def cost_estimate(self) -> int:
        """Inner-loop iterations of the direct accumulation: |H| (the p-free part) times p."""
        return (totient(self.f_N) // 2) * (self.p if self.p > 2 else 1)


def _adjusted(residue: int, Q: int, f: int) -> int:
    return crt([residue % Q, 1], [Q, f // Q])


def choose_multiplier(layer: LayerSpec, f: int, start: int = 2) -> int:
    """Smallest c >= start coprime to f whose image in Gal(Q(N)/Q) is non-trivial."""
    c = max(2, start)
    while True:
        if gcd(c, f) == 1 and char_index(c, layer) != 0:
            return c
        c += 1


def build_setup(N: int, p: int, c_hint: int | None = None) -> TwistSetup:
    if N < 2:
        raise InvalidInput(f"N={N} must be at least 2")
    if not is_prime_u64(p):
        raise InvalidInput(f"p={p} is not prime")
    if p > P_MAX:
        raise InvalidInput(f"p={p} exceeds 2^31")
    if N % p == 0:
        raise RamifiedPrime(f"p={p} divides N={N}")
    layer = LayerSpec(N)
    q = 4 if p == 2 else p
    f = q * layer.conductor
    c = choose_multiplier(layer, f, c_hint or 2)
    caveats = []
    if c_hint is not None and c != c_hint:
        caveats.append(f"c advanced from {c_hint} to {c}")
    if f >= F_MAX // c:
        raise InvalidInput(f"conductor {f} too large for single-word arithmetic with c={c}")
    gens = tuple(_adjusted(part.gen, part.Q, f) for part in layer.parts)
    g = _adjusted(3 if p == 2 else primitive_root(p), q, f)
    return TwistSetup(layer, p, q, f, c, gens, g, tuple(caveats))


def lam(a: int, c: int, f: int) -> int:
    """lambda_a(c) = (a'_c * c - a) / f with a'_c in [1, f] and a'_c * c = a mod f."""
    if gcd(c, f) != 1 or gcd(a, f) != 1:
        raise NotCoprime(f"a={a} and c={c} must be coprime to f={f}")
    a_c = a * pow(c, -1, f) % f or f
    return (a_c * c - a) // f


def lambda_table(c: int, f: int) -> np.ndarray:
    """lambda as a function of x mod c: lambda_x(c) = (-x * f^-1) mod c."""
    finv = pow(f, -1, c) if c > 1 else 0
    return np.array([(-r * finv) % c for r in range(c)], dtype=np.int64)


@dataclass
class MeasureVector:
    setup: TwistSetup
    coeffs: list  # length N, entries in [0, p)
    method: str = "classsum"

    @property
    def N(self) -> int:
        return self.setup.N

    @property
    def p(self) -> int:
        return self.setup.p

    def scaled(self, k: int) -> "MeasureVector":
        return MeasureVector(self.setup, [x * k % self.p for x in self.coeffs], self.method)


def half_system(setup: TwistSetup) -> tuple[np.ndarray, np.ndarray]:
    return _half_system(setup.N, setup.p == 2)


@lru_cache(maxsize=64)
def _half_system(N: int, two: bool) -> tuple[np.ndarray, np.ndarray]:
    """Residues s mod f_N of the half-system together with their exponent index.

    The (Z/q)^x coordinate is left free; the accumulation kernels run over it.
    Odd N halves the first exponent range; even N keeps the <5> coset (a = 1 mod 4).
    For p = 2 the sign is carried by the mod-4 coordinate, so every exponent is full.
    """
    lay = LayerSpec(N)
    fN = lay.conductor
    use_obj = fN >= 1 << 31
    dtype = object if use_obj else np.int64
    svals = np.array([1], dtype=dtype)
    exps = np.array([0], dtype=np.int64)
    for i, part in enumerate(lay.parts):
        if part.ell == 2 or two or i > 0:
            us = range(part.group_order)
        else:
            us = range(1, part.group_order // 2 + 1)
        hm = _adjusted(part.gen, part.Q, fN)
        pw = np.array([pow(hm, u, fN) for u in us], dtype=dtype)
        ev = np.array([(u * part.cofactor) % N for u in us], dtype=np.int64)
        svals = (svals[:, None] * pw[None, :] % fN).reshape(-1)
        exps = ((exps[:, None] + ev[None, :]) % N).reshape(-1)
    svals.flags.writeable = False
    exps.flags.writeable = False
    return svals, exps


def measure_vector(setup: TwistSetup, method: str = "classsum") -> MeasureVector:
    """S(x) over the half-system.

    ``classsum`` regroups the inner sum by residue class mod c and reads it off
    strided prefix sums of the inverse table, O(p + |H| * c). ``direct`` walks
    every (s, k) pair in the compiled kernel, |H| * p steps.
    """
    if setup.p == 2:
        return MeasureVector(setup, _measure_two(setup), method)
    svals, exps = half_system(setup)
    p, c, fN, N = setup.p, setup.c, setup.f_N, setup.N
    lamtab = lambda_table(c, setup.f)
    if method == "direct":
        inv = kernels.inverse_table(p)
        coeffs = kernels.measure_direct(svals.astype(np.int64), exps, fN, p, c, lamtab, inv, N)
    elif method == "classsum":
        coeffs = _measure_classsum(svals, exps, fN, p, c, lamtab, N)
    else:
        raise InvalidInput(f"unknown method {method!r}")
    return MeasureVector(setup, [int(x) for x in coeffs], method)


def _measure_two(setup: TwistSetup) -> list[int]:
    svals, exps = half_system(setup)
    fN, c, f, N = setup.f_N, setup.c, setup.f, setup.N
    lamtab = lambda_table(c, f)
    # x = s mod fN and x = 1 mod 4
    s = svals.astype(object)
    k = ((1 - s) * pow(fN, -1, 4)) % 4
    x = s + k * fN
    lam_vals = np.array([int(lamtab[int(v) % c]) & 1 for v in x], dtype=np.int64)
    out = np.zeros(N, dtype=np.int64)
    np.add.at(out, exps, lam_vals)
    return [int(v) % 2 for v in out]


def _measure_classsum(svals, exps, fN, p, c, lamtab, N):
    # t(s) = sum_k lam[(s + fN k) mod c] * inv[(s + fN k) mod p] over k in [0, p).
    # With j = k + delta mod p, delta = s/fN: inv[...] = inv(fN) * inv(j), and
    # k mod c is fixed on each class of j, split at the wrap point j = delta.
    cum = kernels.class_prefix(p, c)
    s = np.asarray(svals, dtype=np.int64)
    delta = ((s % p) * pow(fN, -1, p) % p)[:, None]
    rho = np.arange(c, dtype=np.int64)[None, :]
    below = cum[np.maximum(0, -(-(delta - rho) // c)), rho]
    whole = cum[-1][None, :]
    s_c = (s % c)[:, None]
    step = fN % c
    lam_hi = lamtab[(s_c + step * ((rho - delta) % c)) % c]
    lam_lo = lamtab[(s_c + step * ((rho - delta + p) % c)) % c]
    t = (((whole - below) % p) * lam_hi + (below % p) * lam_lo).sum(axis=1) % p
    t = t * pow(fN, -1, p) % p
    out = np.zeros(N, dtype=np.int64)
    np.add.at(out, exps, t)
    return out % p


def measure_vector_oracle(setup: TwistSetup, correction: bool = True) -> MeasureVector:
    """Literal sum over a in [1, f/2] coprime to f, with the index from a full discrete log.

    ``correction`` adds the (1 - c)/2 term that the reduced form leaves out.
    """
    f, c, p, N = setup.f, setup.c, setup.p, setup.N
    if f > ORACLE_F_MAX:
        raise OracleScaleExceeded(f"f={f} exceeds {ORACLE_F_MAX}")
    cinv = pow(c, -1, f)
    shift = (1 - c) * pow(2, -1, p) % p if (correction and p > 2) else 0
    out = [0] * N
    a_c = 0
    for a in range(1, f // 2 + 1):
        a_c += cinv
        if a_c >= f:
            a_c -= f
        if gcd(a, f) != 1:
            continue
        lam_a = (a_c * c - a) // f
        w = pow(a, -1, p) if p > 2 else 1
        e = char_index(a, setup)
        out[e] = (out[e] + (lam_a + shift) * w) % p
    return MeasureVector(setup, out, "oracle")


@dataclass
class AnnihilatorReport:
    N: int
    p: int
    c: int
    factors: list = field(default_factory=list)
    degenerate: bool = False
    resultant: int = 0
    caveats: list = field(default_factory=list)
    error: str | None = None
    ms: float = 0.0

    @property
    def detected(self) -> bool:
        return bool(self.factors)


def annihilator_test(vec: MeasureVector) -> AnnihilatorReport:
    setup = vec.setup
    N, p = setup.N, setup.p
    phi = cyclotomic_poly(N, p)
    s = prem([x % p for x in vec.coeffs], phi, p)
    caveats = list(setup.caveats)
    degenerate = not s
    if degenerate:
        g = phi
        res = 0
        caveats.append("Degenerate: S = 0 mod Phi_N, every factor divides")
    else:
        g = pgcd(s, phi, p)
        res = resultant_fp(phi, s, p)
    if (res == 0) != (len(g) > 1):
        raise InternalInconsistency(f"resultant {res} disagrees with gcd degree {len(g) - 1}")
    factors = split_divisor_of_cyclotomic(g, N, p) if len(g) > 1 else []
    return AnnihilatorReport(N, p, setup.c, factors, degenerate, res, caveats)


def annihilate(N: int, p: int, c: int | None = None, method: str = "classsum") -> AnnihilatorReport:
    t0 = time.perf_counter()
    rep = annihilator_test(measure_vector(build_setup(N, p, c), method))
    rep.ms = round((time.perf_counter() - t0) * 1000, 3)
    return rep


# -- scans ---------------------------------------------------------------------------

FILTERS = ("all", "split-muN", "split-K")


@dataclass(frozen=True)
class PBound:
    """Prime bound per layer: absolute ``pmax`` or ``budget // N``; primes start at ``pmin``."""
    pmax: int | None = None
    budget: int | None = None
    pmin: int = 3

    def __post_init__(self):
        if (self.pmax is None) == (self.budget is None):
            raise InvalidInput("give exactly one of pmax and budget")

    def bound(self, N: int) -> int:
        return self.pmax if self.pmax is not None else self.budget // N


def passes_filter(N: int, p: int, flt: str) -> bool:
    if flt == "all":
        return True
    if flt == "split-muN":
        return p % N == 1
    if flt == "split-K":
        return split_profile(LayerSpec(N), p).totally_split
    raise InvalidInput(f"unknown filter {flt!r}")


def candidate_primes(N: int, rule: PBound, flt: str = "all", primes: Iterable[int] | None = None):
    hi = rule.bound(N)
    ps = primes_in(rule.pmin, hi) if primes is None else [q for q in primes if rule.pmin <= q <= hi]
    return [q for q in ps if N % q and passes_filter(N, q, flt)]


def torsion_task(N: int, p: int, c_hint: int | None = None, method: str = "classsum") -> AnnihilatorReport:
    """One (N, p) pair; mathematical failures become error records."""
    try:
        return annihilate(N, p, c_hint, method)
    except WeberScanError as exc:
        return AnnihilatorReport(N, p, 0, error=f"{exc.kind}: {exc}")


def scan_torsion(n_range: Iterable[int], p_bound_rule: PBound, filters: str = "all",
                 method: str = "classsum") -> list[AnnihilatorReport]:
    """Serial scan; non-empty reports and error records, sorted by (N, p)."""
    out = []
    for N in sorted(set(n_range)):
        for p in candidate_primes(N, p_bound_rule, filters):
            rep = torsion_task(N, p, method=method)
            if rep.factors or rep.error:
                out.append(rep)
    return sorted(out, key=lambda r: (r.N, r.p))
