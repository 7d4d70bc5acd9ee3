"""Normic-symbol matrices of cyclotomic units for K_1 = K.Q(p), regulator ranks, Chevalley count.

Two independent routes compute a symbol row:

* ``ring``: exact arithmetic in (Z/p^2)[x]/Phi_f. For each place p_k = (p, s_k(eta) - a) build
  alpha = eta + (1 - eta) m1/(m1 + m2), which is eta near p_k and 1 near the other places, and
  take the Fermat quotient of its norm.
* ``embedding``: evaluate the conjugates of eta in the Galois ring GR(p^2, D) at a Teichmuller
  root of unity. With e_i the image of s_i(eta), the norm of alpha_k is e_{d0-k} mod p^2, where
  e_{d0} = a mod p, so the row is a shifted list of Fermat quotients.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import (
    CycloRingElem, circulant_rank, factor_cyclotomic_mod_p, pmul, prem, rank_mod_p, ring_inv,
)
from .arith import is_prime_u64, primitive_root
from .errors import (
    DegenerateSplitting, FormulaViolation, InternalInconsistency, InvalidInput, NoUniformizer,
    NonCirculant, NotAUnit, NotTotallySplit, RamifiedPrime, Unsupported,
)
from .layers import LayerSpec, divisors, split_profile

UNIT_CAVEAT = "cyclotomic units assumed of p-prime index in E_K"
FULL_MAX_N = 32
RING_MAX_N = 81
ROUTES = ("ring", "embedding")


@dataclass(frozen=True)
class UnitSystem:
    """A cyclotomic unit eta of K = Q(l^n) and the coset representatives of Gal(K/Q)."""
    layer: LayerSpec
    p: int
    f: int
    factors: tuple  # eta = prod over factors of sum(coef * x^exp)
    coset_reps: tuple  # sigma_j acts by x -> x^(coset_reps[j])
    unit: CycloRingElem = field(compare=False, repr=False)

    @property
    def N(self) -> int:
        return self.layer.N

    @property
    def ell(self) -> int:
        return self.layer.parts[0].ell

    @property
    def modulus(self) -> int:
        return self.p * self.p

    def conjugates(self) -> list[CycloRingElem]:
        return [self.unit.galois(t) for t in self.coset_reps]

    def norm(self, z: CycloRingElem) -> CycloRingElem:
        """prod_j sigma_j(z); constant whenever z lies in K."""
        acc = z
        for t in self.coset_reps[1:]:
            acc = acc * z.galois(t)
        return acc


@dataclass(frozen=True)
class SymbolRow:
    p: int
    N: int
    entries: tuple
    a: int
    route: str


@dataclass(frozen=True)
class SymbolMatrix:
    row: SymbolRow
    rank: int
    genus_exponent: int
    mode: str
    full: tuple | None = None
    caveats: tuple = ()

    @property
    def N(self) -> int:
        return self.row.N

    @property
    def p(self) -> int:
        return self.row.p


def _as_layer(layer) -> LayerSpec:
    lay = LayerSpec(layer) if isinstance(layer, int) else layer
    if not lay.is_prime_power:
        raise InvalidInput(f"N={lay.N} is not a prime power > 1")
    return lay


def unit_data(lay: LayerSpec) -> tuple[int, tuple, tuple]:
    """Conductor f, the factor description of eta and the coset representatives."""
    part = lay.parts[0]
    f, N = part.Q, lay.N
    if part.ell == 2:
        # x^-2 (1 + x + x^2 + x^3 + x^4) = x^-2 (1 - x^5)/(1 - x)
        factors = (tuple(((f - 2 + i) % f, 1) for i in range(5)),)
        reps = tuple(pow(5, j, f) for j in range(N))
    else:
        rho = primitive_root(f)
        h = pow(rho, N, f)
        H = pow(rho, part.ell - 1, f)
        factors = tuple(((pow(h, j, f), 1), (f - pow(h, j, f), 1))
                        for j in range(1, (part.ell - 1) // 2 + 1))
        reps = tuple(pow(H, j, f) for j in range(N))
    return f, factors, reps


def _build(lay: LayerSpec, p: int) -> UnitSystem:
    f, factors, reps = unit_data(lay)
    m = p * p
    unit = CycloRingElem.one(f, m)
    for terms in factors:
        unit = unit * CycloRingElem.from_exponents(terms, f, m)
    return UnitSystem(lay, p, f, factors, reps, unit)


def unit_system(layer: LayerSpec | int, p: int) -> UnitSystem:
    lay = _as_layer(layer)
    if not is_prime_u64(p):
        raise InvalidInput(f"p={p} is not prime")
    if p == 2:
        raise Unsupported("genus computations need p odd")
    prof = split_profile(lay, p)
    if not prof.totally_split:
        raise NotTotallySplit(f"p={p} has residue degree {prof.d_K} in Q({lay.N})")
    return _build(lay, p)


# -- Galois-ring embedding --------------------------------------------------------------

def _gr_mul(a, b, g, m):
    return prem(pmul(a, b, m), g, m)


def _gr_pow(a, e, g, m):
    result, base = [1], prem(list(a), g, m)
    while e:
        if e & 1:
            result = _gr_mul(result, base, g, m)
        e >>= 1
        if e:
            base = _gr_mul(base, base, g, m)
    return result


def embedding_values(us: UnitSystem, m: int | None = None) -> list[int]:
    """Images e_j of sigma_j(eta) under one embedding O_K -> Z/m, m = p or p^2."""
    p, f = us.p, us.f
    m = us.modulus if m is None else m
    g = factor_cyclotomic_mod_p(f, p)[0]
    D = len(g) - 1
    y = _gr_pow([0, 1], p**D, g, m) if m != p else [0, 1]
    if _gr_pow(y, f, g, m) != [1]:
        raise InternalInconsistency("Teichmuller lift is not a root of unity of order f")
    out = []
    for t in us.coset_reps:
        val = [1]
        for terms in us.factors:
            s = []
            for e, coef in terms:
                term = _gr_pow(y, e * t % f, g, m)
                s = [(u + coef * v) % m for u, v in
                     zip(s + [0] * (len(term) - len(s)), term + [0] * (len(s) - len(term)))]
            val = _gr_mul(val, s, g, m)
        if len(val) > 1 and any(val[1:]):
            raise InternalInconsistency("conjugate of eta does not embed into Z/m")
        out.append(val[0] if val else 0)
    return out


# -- symbols ----------------------------------------------------------------------------

def fermat_quotient(x: int, p: int) -> int:
    """((x^(p-1) mod p^2) - 1)/p mod p: a surjection (Z/p^2)^x -> F_p."""
    m = p * p
    x %= m
    if x % p == 0:
        raise NotAUnit(f"{x} is not a unit mod {p}")
    return ((pow(x, p - 1, m) - 1) // p) % p


def _valuation_capped(x: int, p: int) -> int:
    """v_p(x) for x mod p^2, with 2 meaning 'at least 2'."""
    x %= p * p
    if x == 0:
        return 2
    return 1 if x % p == 0 else 0


def find_uniformizer(us: UnitSystem, route: str = "ring") -> int:
    """Smallest a in [1, p-1] with v_p(Norm(eta - a)) = 1.

    Candidates are the residues of the conjugates of eta at one place over p; every other a
    has valuation 0. The ring route checks each candidate by an exact norm and cross-checks
    the valuation against the residue count.
    """
    p = us.p
    res = [e % p for e in embedding_values(us, p)]
    if route == "embedding":
        ev = embedding_values(us)
    for a in sorted(set(res)):
        if route == "ring":
            nz = us.norm(us.unit - a)
            if not nz.is_constant():
                raise InternalInconsistency("norm of a K-element is not constant")
            v = _valuation_capped(int(nz.c[0]), p)
        elif route == "embedding":
            prod = 1
            for e in ev:
                prod = prod * (e - a) % us.modulus
            v = _valuation_capped(prod, p)
        else:
            raise InvalidInput(f"unknown route {route!r}")
        if v == 0 or (v == 1 and res.count(a) != 1):
            raise InternalInconsistency(f"valuation {v} disagrees with residue count at a={a}")
        if v == 1:
            return a
    raise NoUniformizer(f"no a in [1, {p - 1}] with v_p(Norm(eta - a)) = 1 for N={us.N}")


def _ring_weights(us: UnitSystem, a: int) -> list[CycloRingElem]:
    """mu_k = m1/(m1 + m2): 0 mod p_k^2 and 1 mod the square of every other place."""
    A = [c - a for c in us.conjugates()]
    N = len(A)
    one = CycloRingElem.one(us.f, us.modulus)
    prefix = [one]
    for x in A[:-1]:
        prefix.append(prefix[-1] * x)
    suffix = [one] * (N + 1)
    for k in range(N - 1, 0, -1):
        suffix[k] = suffix[k + 1] * A[k]
    mus = []
    for k in range(N):
        rest = prefix[k] * suffix[k + 1]
        m1 = A[k] * A[k]
        try:
            inv = ring_inv(m1 + rest * rest, us.p)
        except NotAUnit:
            raise DegenerateSplitting(f"m1 + m2 not a unit at k={k}, a={a}") from None
        mus.append(m1 * inv)
    return mus


def _ring_entry(us: UnitSystem, E: CycloRingElem, mu: CycloRingElem) -> int:
    alpha = E + (1 - E) * mu
    nz = us.norm(alpha)
    if not nz.is_constant():
        raise InternalInconsistency("norm of alpha is not constant")
    return fermat_quotient(int(nz.c[0]), us.p)


def symbol_row(us: UnitSystem, a: int, route: str = "ring") -> SymbolRow:
    p, N = us.p, us.N
    if route == "ring":
        entries = [_ring_entry(us, us.unit, mu) for mu in _ring_weights(us, a)]
    elif route == "embedding":
        ev = embedding_values(us)
        hits = [i for i, e in enumerate(ev) if (e - a) % p == 0]
        if len(hits) != 1:
            raise DegenerateSplitting(f"a={a} matches {len(hits)} conjugates mod p")
        d0 = hits[0]
        entries = [fermat_quotient(ev[(d0 - k) % N], p) for k in range(N)]
    else:
        raise InvalidInput(f"unknown route {route!r}")
    if sum(entries) % p:
        raise InternalInconsistency("symbol row does not sum to 0 (product formula)")
    return SymbolRow(p, N, tuple(entries), a, route)


def symbol_matrix(us: UnitSystem, row: SymbolRow, mode: str = "circulant") -> SymbolMatrix:
    p, N = us.p, us.N
    full = None
    if mode == "circulant":
        rank = circulant_rank(list(row.entries), p)
    elif mode == "full":
        if N > FULL_MAX_N:
            raise Unsupported(f"full mode is limited to N <= {FULL_MAX_N}")
        mus = _ring_weights(us, row.a)
        full = tuple(tuple(_ring_entry(us, E, mu) for mu in mus) for E in us.conjugates())
        for j in range(N):
            for k in range(N):
                if full[j][k] != row.entries[(k - j) % N]:
                    raise NonCirculant(f"M[{j}][{k}] differs from the shifted row")
        if any(sum(full[j][k] for j in range(N)) % p for k in range(N)):
            raise InternalInconsistency("a column of the symbol matrix does not sum to 0")
        rank = rank_mod_p(full, p)
    else:
        raise InvalidInput(f"unknown mode {mode!r}")
    if not 0 <= rank <= N - 1:
        raise InternalInconsistency(f"rank {rank} outside [0, {N - 1}]")
    return SymbolMatrix(row, rank, N - 1 - rank, mode, full, (UNIT_CAVEAT,))


def pick_route(N: int) -> str:
    return "ring" if N <= RING_MAX_N else "embedding"


def genus(N: int, p: int, mode: str = "circulant", route: str | None = None) -> SymbolMatrix:
    """Symbol matrix, rank and genus exponent for K = Q(N), N a prime power, p totally split."""
    route = route or pick_route(N)
    us = unit_system(N, p)
    a = find_uniformizer(us, route)
    sm = symbol_matrix(us, symbol_row(us, a, route), mode)
    if route == "embedding":
        sm = SymbolMatrix(sm.row, sm.rank, sm.genus_exponent, sm.mode, sm.full,
                          sm.caveats + ("embedding route",))
    return sm


# -- Chevalley and the regulator ----------------------------------------------------------

def chevalley_order(h_k: int, ram_indices, degree: int, unit_norm_index: int) -> int:
    """h_k * prod(e) / (degree * unit_norm_index), which must be a positive integer."""
    vals = [h_k, degree, unit_norm_index, *ram_indices]
    if any(int(v) < 1 for v in vals):
        raise InvalidInput("Chevalley inputs must be positive integers")
    num = h_k
    for e in ram_indices:
        num *= e
    q = Fraction(num, degree * unit_norm_index)
    if q.denominator != 1:
        raise FormulaViolation(f"Chevalley quotient {q} is not an integer")
    return q.numerator


def genus_order(N: int, p: int, rank: int) -> int:
    """#G for K_1/K at m = 1 with C_K = 1: N ramified places of index p, index p^rank."""
    return chevalley_order(1, [p] * N, p, p**rank)


def regulator_rank(layer: LayerSpec | int, p: int) -> int:
    """F_p-rank of the p-adic logarithms (eta_j^E - 1)/p - (eta_0^E - 1)/p, j = 1..N-1.

    E = p^d - 1 with d the residue degree of p in K, so eta^E = 1 mod p. Rank N - 1 means the
    normalized regulator is a p-adic unit.
    """
    lay = _as_layer(layer)
    if not is_prime_u64(p):
        raise InvalidInput(f"p={p} is not prime")
    if lay.parts[0].ell == p:
        raise RamifiedPrime(f"p={p} ramifies in Q({lay.N})")
    us = _build(lay, p)
    d = split_profile(lay, p).d_K
    w = us.unit ** (p**d - 1)
    shifted = w - 1
    if (shifted.c % p).any():
        raise InternalInconsistency("eta^(p^d - 1) is not 1 mod p")
    lam = CycloRingElem._raw((shifted.c // p) % p, us.f, p)
    base = lam.c
    rows = [(lam.galois(t).c - base) % p for t in us.coset_reps[1:]]
    return rank_mod_p([np.asarray(r).tolist() for r in rows], p)


# -- the Weber pipeline -----------------------------------------------------------------

@dataclass
class WeberReport:
    N: int
    p: int
    profile: dict
    reduced_N: int
    components: list  # AnnihilatorReport for every divisor N'' > 1 with a detection
    genus: list  # (N'', SymbolMatrix)
    verdict: str
    caveats: list


def weber_pipeline(N: int, p: int, route: str | None = None) -> WeberReport:
    from .stickelberger import annihilate

    prof = split_profile(N, p)
    caveats: list[str] = []
    comps = []
    for d in divisors(N):
        if d > 1:
            rep = annihilate(d, p)
            if rep.detected:
                comps.append(rep)
    reduced = prof.s_p
    results = []
    if not comps:
        verdict = "T_K = 1 on every tested component"
    elif not prof.totally_split:
        verdict = f"T_K != 1; no genus statement, p not totally split (splitting field Q({reduced}))"
    elif p == 2:
        verdict = "T_K != 1; genus computations need p odd"
    else:
        for rep in comps:
            lay = LayerSpec(rep.N)
            if not lay.is_prime_power:
                caveats.append(f"component N={rep.N} is composite; genus not computed")
                continue
            results.append((rep.N, genus(rep.N, p, route=route)))
        if any(sm.genus_exponent > 0 for _, sm in results):
            verdict = f"C_(K_1) != 1 for K_1 = Q({N}).Q({p})"
        elif results:
            verdict = "T_K != 1, genus trivial at m=1; larger m needed (unsupported)"
        else:
            verdict = "T_K != 1; only composite components detected"
        caveats.append(UNIT_CAVEAT)
    return WeberReport(N, p, prof.as_dict(), reduced, comps, results, verdict, caveats)
