"""Polynomials over Z/mZ, cyclotomic factorisation mod p and the ring (Z/p^2)[x]/Phi_f.

Polynomials are ascending coefficient lists with every entry in [0, m); the zero
polynomial is the empty list. The list-level helpers (``padd``, ``pmul``, ...) are
the working layer; :class:`ModPoly` wraps them for callers that want an object.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from . import kernels
from .arith import factorint, is_prime_u64, multiplicative_order, primitive_root, totient
from .errors import InternalInconsistency, InvalidInput, NotAUnit, RamifiedPrime

MAX_MODULUS = 1 << 62

__all__ = [
    "ModPoly", "CycloRingElem", "cyclotomic_poly", "poly_gcd_fp", "resultant_fp",
    "factor_cyclotomic_mod_p", "equal_degree_factors", "ring_mul", "ring_inv", "is_prime_u64",
]


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def normalize(a, m: int) -> list[int]:
    return trim([int(c) % m for c in a])


def deg(a: list[int]) -> int:
    return len(a) - 1


def padd(a, b, m):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % m
    return trim(out)


def psub(a, b, m):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % m
    return trim(out)


def pscale(a, k, m):
    k %= m
    return trim([c * k % m for c in a]) if k else []


def pmul(a, b, m):
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a):
                out[i + j] += ai * bj
    return trim([c % m for c in out])


def pdivmod(a, b, p):
    """Quotient and remainder over the field F_p."""
    if not b:
        raise InvalidInput("division by the zero polynomial")
    r = list(a)
    db = len(b) - 1
    if len(r) <= db:
        return [], trim(r)
    inv = pow(b[-1], -1, p)
    q = [0] * (len(r) - db)
    low = b[:-1]
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] * inv % p
        if c:
            q[k - db] = c
            off = k - db
            r[off:k] = [(x - c * y) % p for x, y in zip(r[off:k], low)]
    return trim(q), trim(r[:db])


def prem(a, b, p):
    return pdivmod(a, b, p)[1]


def monic(a, p):
    if not a:
        return []
    return pscale(a, pow(a[-1], -1, p), p)


def pgcd(a, b, p):
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, prem(a, b, p)
    return monic(a, p)


def pxgcd(a, b, p):
    """(g, s, t) with s*a + t*b = g monic."""
    r0, r1 = trim(list(a)), trim(list(b))
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1, p), p)
        t0, t1 = t1, psub(t0, pmul(q, t1, p), p)
    if not r0:
        return [], [], []
    k = pow(r0[-1], -1, p)
    return pscale(r0, k, p), pscale(s0, k, p), pscale(t0, k, p)


def ppowmod(a, e, mod, p):
    result = [1]
    base = prem(a, mod, p)
    while e:
        if e & 1:
            result = prem(pmul(result, base, p), mod, p)
        e >>= 1
        if e:
            base = prem(pmul(base, base, p), mod, p)
    return result


def peval(a, x, m):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % m
    return acc


@dataclass(frozen=True)
class ModPoly:
    coeffs: tuple
    modulus: int

    def __init__(self, coeffs, modulus: int):
        if not 2 <= modulus <= MAX_MODULUS:
            raise InvalidInput(f"modulus {modulus} outside [2, 2^62]")
        object.__setattr__(self, "coeffs", tuple(normalize(coeffs, modulus)))
        object.__setattr__(self, "modulus", modulus)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def _check(self, other):
        if self.modulus != other.modulus:
            raise InvalidInput("moduli differ")

    def __add__(self, other):
        self._check(other)
        return ModPoly(padd(list(self.coeffs), list(other.coeffs), self.modulus), self.modulus)

    def __sub__(self, other):
        self._check(other)
        return ModPoly(psub(list(self.coeffs), list(other.coeffs), self.modulus), self.modulus)

    def __mul__(self, other):
        self._check(other)
        return ModPoly(pmul(list(self.coeffs), list(other.coeffs), self.modulus), self.modulus)

    def __divmod__(self, other):
        self._check(other)
        q, r = pdivmod(list(self.coeffs), list(other.coeffs), self.modulus)
        return ModPoly(q, self.modulus), ModPoly(r, self.modulus)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        return peval(self.coeffs, x, self.modulus)

    def __repr__(self):
        return f"ModPoly({list(self.coeffs)}, {self.modulus})"


def _as_list(a, p):
    if isinstance(a, ModPoly):
        return list(a.coeffs)
    return normalize(a, p)


# -- cyclotomic polynomials --------------------------------------------------

def cyclotomic_by_division(n: int) -> list[int]:
    return list(_cyclo_int(n))


@lru_cache(maxsize=512)
def _cyclo_int(n: int) -> tuple:
    # x^n - 1 divided exactly by Phi_d for every proper divisor d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div_int(num, list(_cyclo_int(d)))
    return tuple(num)


def _exact_div_int(a, b):
    # monic integer divisor
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        q[k - db] = c
        if c:
            for i in range(db + 1):
                a[k - db + i] -= c * b[i]
    if any(a[:db]):
        raise InternalInconsistency("cyclotomic division left a remainder")
    return q


def cyclotomic_poly(n: int, modulus: int | None = None) -> list[int]:
    """Phi_n as an ascending coefficient list (integers, or reduced mod ``modulus``).

    Prime powers use Phi_{l^k}(x) = Phi_l(x^{l^(k-1)}); everything else divides
    x^n - 1 by Phi_d for the proper divisors d.
    """
    if n < 1:
        raise InvalidInput(f"n={n} must be positive")
    fac = factorint(n)
    if len(fac) == 1 and n > 2:
        ell, block = fac[0][0], n // fac[0][0]
        c = [0] * ((ell - 1) * block + 1)
        c[::block] = [1] * ell
    else:
        c = list(_cyclo_int(n))
    return c if modulus is None else normalize(c, modulus)


# -- gcd and resultant ---------------------------------------------------------

def poly_gcd_fp(a, b, p: int) -> list[int]:
    """Monic gcd over F_p; gcd(a, 0) is monic a and gcd(0, 0) is 0."""
    return pgcd(_as_list(a, p), _as_list(b, p), p)


def resultant_fp(a, b, p: int) -> int:
    """Res(a, b) mod p by the Euclidean recurrence. Zero iff a, b share a root."""
    a, b = _as_list(a, p), _as_list(b, p)
    if not a and not b:
        raise InvalidInput("resultant of two zero polynomials")
    if not a or not b:
        other = a or b
        return 1 if len(other) == 1 else 0
    acc = 1
    while True:
        m, n = len(a) - 1, len(b) - 1
        if n == 0:
            return acc * pow(b[0], m, p) % p
        r = prem(a, b, p)
        if not r:
            return 0
        if (m * n) % 2:
            acc = -acc
        acc = acc * pow(b[-1], m - (len(r) - 1), p) % p
        a, b = b, r


# -- characteristic 2 as packed integers ------------------------------------------

def _to_bits(a) -> int:
    v = 0
    for i, c in enumerate(a):
        if c & 1:
            v |= 1 << i
    return v


def _from_bits(v: int) -> list[int]:
    return [(v >> i) & 1 for i in range(v.bit_length())]


def _gf2_mod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def _gf2_mulmod(a: int, b: int, m: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
    return _gf2_mod(r, m)


def _gf2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _gf2_mod(a, b)
    return a


def _split_gf2(f: int, d: int, rng: random.Random) -> list[int]:
    n = f.bit_length() - 1
    if n == d:
        return [f]
    while True:
        a = rng.getrandbits(n) | 2
        t, s = a, a
        for _ in range(d - 1):
            s = _gf2_mulmod(s, s, f)
            t ^= s
        g = _gf2_gcd(f, t)
        if 0 < g.bit_length() - 1 < n:
            q = _gf2_div(f, g)
            return _split_gf2(g, d, rng) + _split_gf2(q, d, rng)


def _gf2_div(a: int, b: int) -> int:
    q = 0
    db = b.bit_length()
    while a.bit_length() >= db:
        s = a.bit_length() - db
        q |= 1 << s
        a ^= b << s
    return q


# -- equal-degree factorisation ---------------------------------------------------

def equal_degree_factors(f, d: int, p: int, seed: int = 0) -> list[list[int]]:
    """Split a monic squarefree f whose irreducible factors all have degree d.

    Cantor-Zassenhaus with a seeded generator; the trace map replaces the
    (p^d - 1)/2 power when p = 2. Output is sorted lexicographically.
    """
    f = monic(_as_list(f, p), p)
    if len(f) - 1 < 1:
        return []
    if (len(f) - 1) % d:
        raise InvalidInput(f"degree {len(f) - 1} is not a multiple of {d}")
    rng = random.Random(seed)
    if p == 2:
        out = [_from_bits(g) for g in _split_gf2(_to_bits(f), d, rng)]
    else:
        out = _split_odd(f, d, p, rng)
    return sorted(out)


def _split_odd(f, d, p, rng):
    n = len(f) - 1
    if n == d:
        return [f]
    e = (p**d - 1) // 2
    while True:
        a = trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        b = psub(ppowmod(a, e, f, p), [1], p)
        g = pgcd(f, b, p)
        if 0 < len(g) - 1 < n:
            q = pdivmod(f, g, p)[0]
            return _split_odd(g, d, p, rng) + _split_odd(monic(q, p), d, p, rng)


def _seed(n: int, p: int) -> int:
    return (n * 0x9E3779B97F4A7C15 + p) & ((1 << 64) - 1)


@lru_cache(maxsize=256)
def _factor_cyclo_cached(n: int, p: int) -> tuple:
    d = multiplicative_order(p % n, n) if n > 1 else 1
    phi = cyclotomic_poly(n, p)
    if d == 1:
        if n <= 2:
            return (tuple(phi),)
        g = primitive_root(p)
        r = pow(g, (p - 1) // n, p)
        facs = [[(-pow(r, k, p)) % p, 1] for k in range(1, n + 1) if gcd(k, n) == 1]
        return tuple(tuple(f) for f in sorted(facs))
    return tuple(tuple(f) for f in equal_degree_factors(phi, d, p, _seed(n, p)))


def factor_cyclotomic_mod_p(n: int, p: int) -> list[list[int]]:
    """Monic irreducible factors of Phi_n mod p, sorted, each of degree ord_n(p)."""
    if n < 1 or not is_prime_u64(p):
        raise InvalidInput(f"need n >= 1 and p prime, got n={n}, p={p}")
    if n % p == 0:
        raise RamifiedPrime(f"p={p} divides n={n}")
    return [list(f) for f in _factor_cyclo_cached(n, p)]


def split_divisor_of_cyclotomic(g, n: int, p: int) -> list[list[int]]:
    """Irreducible factors of a monic divisor g of Phi_n mod p, sorted."""
    g = monic(_as_list(g, p), p)
    if len(g) <= 1:
        return []
    d = multiplicative_order(p % n, n) if n > 1 else 1
    if d == 1:
        if n <= 2:
            return [g]
        roots = [r for r in _roots_of_unity(n, p) if peval(g, r, p) == 0]
        return sorted([[(-r) % p, 1] for r in roots])
    return equal_degree_factors(g, d, p, _seed(n, p) ^ len(g))


@lru_cache(maxsize=64)
def _roots_of_unity(n: int, p: int) -> tuple:
    r = pow(primitive_root(p), (p - 1) // n, p)
    return tuple(pow(r, k, p) for k in range(1, n + 1) if gcd(k, n) == 1)


# -- the ring (Z/m)[x]/Phi_f for prime-power f --------------------------------------

@lru_cache(maxsize=64)
def _prime_power(f: int) -> tuple[int, int]:
    fac = factorint(f)
    if len(fac) != 1:
        raise InvalidInput(f"conductor {f} must be a prime power")
    return fac[0][0], f // fac[0][0]


class CycloRingElem:
    """Element of (Z/m)[x]/Phi_f, f a prime power, stored as an int64 array of length phi(f)."""

    __slots__ = ("c", "f", "m")

    def __init__(self, coeffs, f: int, m: int):
        if not 2 <= m <= MAX_MODULUS:
            raise InvalidInput(f"modulus {m} outside [2, 2^62]")
        ell, block = _prime_power(f)
        n = (ell - 1) * block
        arr = np.zeros(max(n, len(coeffs)), dtype=object)
        arr[: len(coeffs)] = [int(x) % m for x in coeffs]
        if len(coeffs) > n:
            arr = _reduce_object(arr, f, ell, block, m)
        self.c = np.asarray(arr[:n], dtype=np.int64)
        self.f, self.m = f, m

    @classmethod
    def _raw(cls, arr, f, m):
        obj = cls.__new__(cls)
        obj.c, obj.f, obj.m = arr, f, m
        return obj

    @classmethod
    def from_exponents(cls, terms, f: int, m: int):
        """Sum of coef * x^e for (e, coef) pairs, exponents taken mod f."""
        ell, block = _prime_power(f)
        n = (ell - 1) * block
        buf = np.zeros(f, dtype=object)
        for e, coef in terms:
            buf[e % f] += coef
        return cls._raw(np.asarray(_reduce_object(buf, f, ell, block, m)[:n], dtype=np.int64), f, m)

    @classmethod
    def one(cls, f, m):
        return cls([1], f, m)

    @property
    def dim(self) -> int:
        return len(self.c)

    def coeffs(self) -> list[int]:
        return [int(x) for x in self.c]

    def is_constant(self) -> bool:
        return not self.c[1:].any()

    def __eq__(self, other):
        return (isinstance(other, CycloRingElem) and self.f == other.f and self.m == other.m
                and np.array_equal(self.c, other.c))

    def __add__(self, other):
        if isinstance(other, int):
            out = self.c.copy()
            out[0] = (int(out[0]) + other) % self.m
            return CycloRingElem._raw(out, self.f, self.m)
        return CycloRingElem._raw(kernels.addmod(self.c, other.c, self.m), self.f, self.m)

    def __sub__(self, other):
        if isinstance(other, int):
            return self + (-other)
        return CycloRingElem._raw(kernels.addmod(self.c, kernels.negmod(other.c, self.m), self.m),
                                  self.f, self.m)

    def __rsub__(self, other):
        return CycloRingElem._raw(kernels.negmod(self.c, self.m), self.f, self.m) + other

    def __mul__(self, other):
        return ring_mul(self, other)

    def __pow__(self, e: int):
        result = CycloRingElem.one(self.f, self.m)
        base = self
        while e:
            if e & 1:
                result = ring_mul(result, base)
            e >>= 1
            if e:
                base = ring_mul(base, base)
        return result

    def galois(self, t: int):
        """Image under x -> x^t, gcd(t, f) = 1."""
        ell, block = _prime_power(self.f)
        idx = (np.arange(self.dim, dtype=np.int64) * (t % self.f)) % self.f
        buf = np.zeros(self.f, dtype=np.int64)
        buf[idx] = self.c
        return CycloRingElem._raw(kernels.reduce_cyclo(buf, ell, block, self.m), self.f, self.m)

    def reduce(self, m2: int) -> "CycloRingElem":
        return CycloRingElem._raw(self.c % m2, self.f, m2)

    def __repr__(self):
        return f"CycloRingElem({self.coeffs()}, f={self.f}, m={self.m})"


def _reduce_object(buf, f, ell, block, m):
    buf = np.array(buf, dtype=object)
    if len(buf) > f:
        full = np.zeros(f, dtype=object)
        for i in range(len(buf)):
            full[i % f] += buf[i]
        buf = full
    elif len(buf) < f:
        buf = np.concatenate([buf, np.zeros(f - len(buf), dtype=object)])
    n = (ell - 1) * block
    top = buf[n:f].copy()
    for i in range(ell - 1):
        buf[i * block : (i + 1) * block] -= top
    return np.array([int(x) % m for x in buf[:n]], dtype=object)


def ring_mul(a: CycloRingElem, b: CycloRingElem) -> CycloRingElem:
    if a.f != b.f or a.m != b.m:
        raise InvalidInput("ring elements from different rings")
    ell, block = _prime_power(a.f)
    return CycloRingElem._raw(kernels.cyclo_mulmod(a.c, b.c, ell, block, a.m), a.f, a.m)


def ring_inv(a: CycloRingElem, p: int | None = None) -> CycloRingElem:
    """Inverse in (Z/p^2)[x]/Phi_f: extended gcd mod (p, Phi_f), then one Newton step.

    ``p`` defaults to the square root of the modulus; a prime modulus p is also accepted.
    """
    m = a.m
    if p is None:
        p = _sqrt_exact(m)
    lifted = m != p
    phi = cyclotomic_poly(a.f, p)
    g, s, _ = pxgcd([int(x) % p for x in a.c], phi, p)
    if g != [1]:
        raise NotAUnit("element is not invertible modulo (p, Phi_f)")
    b = CycloRingElem(s, a.f, m)
    if lifted:
        b = b * (2 - a * b)
    check = a * b
    if not (check.is_constant() and int(check.c[0]) == 1):
        raise InternalInconsistency("Newton lift failed to produce an inverse")
    return b


def _sqrt_exact(m: int) -> int:
    from math import isqrt

    r = isqrt(m)
    if r * r == m:
        return r
    return m


def rank_mod_p(rows, p: int) -> int:
    """Rank over F_p of a matrix given as a list of integer rows."""
    mat = [[int(x) % p for x in r] for r in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][col], -1, p)
        prow = [x * inv % p for x in mat[rank]]
        mat[rank] = prow
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                k = mat[i][col]
                mat[i] = [(x - k * y) % p for x, y in zip(mat[i], prow)]
        rank += 1
        if rank == len(mat):
            break
    return rank


def circulant_rank(row, p: int) -> int:
    """Rank over F_p of the circulant M[j][k] = row[(k - j) mod N], assuming p does not divide N."""
    n = len(row)
    r = normalize(row, p)
    if not r:
        return 0
    xn1 = [p - 1] + [0] * (n - 1) + [1]
    return n - deg(pgcd(r, xn1, p))
