"""Layers Q(N) of cyclotomic Z_l-extensions: conductors, character indices, splitting of p."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, lcm

from .arith import discrete_log, factorint, is_prime_u64, multiplicative_order, primitive_root, valuation
from .errors import InvalidInput, NotCoprime, RamifiedPrime


@dataclass(frozen=True)
class Part:
    """One prime-power factor l^n of N and its slice (Z/Q)^x of the conductor."""
    ell: int
    n: int
    Q: int  # l^(n+1), or 2^(n+2) for l = 2
    q: int  # l^n
    cofactor: int  # N / q
    gen: int  # primitive root mod Q, or 5 when l = 2

    @property
    def group_order(self) -> int:
        """Order of ``gen`` mod Q."""
        return self.q if self.ell == 2 else self.q * (self.ell - 1)


@dataclass(frozen=True)
class LayerSpec:
    N: int
    factors: tuple = field(default=())

    def __post_init__(self):
        if self.N < 1:
            raise InvalidInput(f"N={self.N} must be positive")
        if not self.factors:
            object.__setattr__(self, "factors", tuple(factorint(self.N)) if self.N > 1 else ())

    @property
    def parts(self) -> tuple[Part, ...]:
        return _parts(self.N, self.factors)

    @property
    def conductor(self) -> int:
        f = 1
        for part in self.parts:
            f *= part.Q
        return f

    @property
    def is_prime_power(self) -> bool:
        return len(self.factors) == 1


@lru_cache(maxsize=1024)
def _parts(N, factors):
    out = []
    for ell, n in factors:
        q = ell**n
        Q = 2 ** (n + 2) if ell == 2 else ell ** (n + 1)
        gen = 5 if ell == 2 else primitive_root(Q)
        out.append(Part(ell, n, Q, q, N // q, gen))
    return tuple(out)


def layer(N: int) -> LayerSpec:
    return LayerSpec(N)


def conductor(N: int) -> int:
    """Conductor of Q(N): prod l^(n+1), with the 2-part replaced by 2^(n+2)."""
    return LayerSpec(N).conductor


def part_exponent(a: int, part: Part) -> int:
    """Exponent u with a = gen^u mod Q (up to sign when l = 2), reduced mod q."""
    r = a % part.Q
    if part.ell == 2:
        if r % 4 == 3:
            r = part.Q - r
        u = discrete_log(r, 5, part.Q, part.q)
    else:
        u = discrete_log(r, part.gen, part.Q, part.group_order)
    return u % part.q


def char_index(a: int, setup) -> int:
    """Index of the image of a under (Z/f)^x -> Gal(Q(N)/Q) = Z/N.

    ``setup`` is a LayerSpec or anything with ``.layer`` and ``.f``; components of a
    outside the layer conductor (the p-part) contribute nothing.
    """
    lay = setup if isinstance(setup, LayerSpec) else setup.layer
    modulus = lay.conductor if isinstance(setup, LayerSpec) else setup.f
    if gcd(a, modulus) != 1:
        raise NotCoprime(f"gcd({a}, {modulus}) > 1")
    return _index_mod_conductor(a % lay.conductor, lay.N)


@lru_cache(maxsize=65536)
def _index_mod_conductor(r: int, N: int) -> int:
    lay = LayerSpec(N)
    idx = 0
    for part in lay.parts:
        idx += part_exponent(r, part) * part.cofactor
    return idx % N if N > 1 else 0


@dataclass(frozen=True)
class SplitProfile:
    N: int
    p: int
    d_parts: tuple
    d_K: int
    s_p: int
    totally_split: bool
    rho_N: int
    w_rank: int

    def as_dict(self) -> dict:
        return {
            "N": self.N, "p": self.p, "d_parts": list(self.d_parts), "d_K": self.d_K,
            "s_p": self.s_p, "totally_split": self.totally_split, "rho_N": self.rho_N,
            "w_rank": self.w_rank,
        }


def split_profile(lay: LayerSpec | int, p: int) -> SplitProfile:
    """Residue degree d_K of p in Q(N), the number s_p = N/d_K of primes above it, and ord_N(p)."""
    if isinstance(lay, int):
        lay = LayerSpec(lay)
    N = lay.N
    if not is_prime_u64(p):
        raise InvalidInput(f"p={p} is not prime")
    if N % p == 0:
        raise RamifiedPrime(f"p={p} divides N={N}")
    ds = []
    for part in lay.parts:
        if part.ell == 2:
            w = valuation(p * p - 1, 2)
            ds.append(2 ** max(0, part.n + 3 - w))
        else:
            v = valuation(pow(p, part.ell - 1) - 1, part.ell)
            ds.append(part.ell ** max(0, part.n + 1 - v))
    d_K = lcm(*ds) if ds else 1
    s_p = N // d_K
    rho = multiplicative_order(p % N, N) if N > 1 else 1
    return SplitProfile(N, p, tuple(ds), d_K, s_p, d_K == 1, rho, s_p - 1 if p == 2 else 0)


def residue_degree_by_index(lay: LayerSpec | int, p: int) -> int:
    """d_K recomputed as the order of char_index(p) in Z/N."""
    if isinstance(lay, int):
        lay = LayerSpec(lay)
    if lay.N == 1:
        return 1
    return lay.N // gcd(lay.N, char_index(p, lay))


def divisors(n: int) -> list[int]:
    return sorted(d for d in range(1, n + 1) if n % d == 0)
