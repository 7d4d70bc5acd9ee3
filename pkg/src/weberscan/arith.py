"""Integer number theory: primality, factoring, orders, primitive roots, discrete logs."""
from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt

import numpy as np

from .errors import InvalidInput

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime_u64(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=4096)
def _factor_cached(n: int) -> tuple:
    out = []
    m = n
    for q in (2, 3):
        if m % q == 0:
            e = 0
            while m % q == 0:
                m //= q
                e += 1
            out.append((q, e))
    q = 5
    while q * q <= m:
        for r in (q, q + 2):
            if m % r == 0:
                e = 0
                while m % r == 0:
                    m //= r
                    e += 1
                out.append((r, e))
        q += 6
    if m > 1:
        out.append((m, 1))
    return tuple(sorted(out))


def factorint(n: int) -> list[tuple[int, int]]:
    """Prime factorisation by trial division, as sorted (prime, exponent) pairs."""
    if n < 1:
        raise InvalidInput(f"cannot factor {n}")
    return list(_factor_cached(n))


def totient(n: int) -> int:
    r = n
    for q, _ in factorint(n):
        r = r // q * (q - 1)
    return r


def valuation(n: int, q: int) -> int:
    if n == 0:
        raise InvalidInput("valuation of 0")
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    return v


def multiplicative_order(a: int, n: int, group_order: int | None = None) -> int:
    """Order of a in (Z/n)^x; ``group_order`` may be any multiple of it."""
    if gcd(a, n) != 1:
        raise InvalidInput(f"{a} is not a unit mod {n}")
    if n == 1:
        return 1
    e = totient(n) if group_order is None else group_order
    for q, _ in factorint(e):
        while e % q == 0 and pow(a, e // q, n) == 1:
            e //= q
    return e


@lru_cache(maxsize=1024)
def primitive_root(n: int) -> int:
    """Smallest positive generator of (Z/n)^x for n a prime power (odd, or 2, 4)."""
    if n in (2, 4):
        return n - 1
    fac = factorint(n)
    if len(fac) != 1 or fac[0][0] == 2:
        raise InvalidInput(f"(Z/{n})^x is not cyclic or not supported")
    ph = totient(n)
    qs = [q for q, _ in factorint(ph)]
    for g in range(2, n):
        if gcd(g, n) == 1 and all(pow(g, ph // q, n) != 1 for q in qs):
            return g
    raise InvalidInput(f"no primitive root mod {n}")


def crt(residues, moduli) -> int:
    x, m = 0, 1
    for r, q in zip(residues, moduli):
        t = (r - x) * pow(m, -1, q) % q
        x += m * t
        m *= q
    return x % m


def _bsgs(h: int, g: int, order: int, n: int) -> int:
    m = isqrt(order) + 1
    table = {}
    e = 1
    for j in range(m):
        table.setdefault(e, j)
        e = e * g % n
    step = pow(g, -m, n)
    y = h
    for i in range(m + 1):
        j = table.get(y)
        if j is not None:
            return (i * m + j) % order
        y = y * step % n
    raise InvalidInput(f"{h} not in the subgroup generated by {g} mod {n}")


def discrete_log(h: int, g: int, n: int, order: int) -> int:
    """Pohlig-Hellman: x in [0, order) with g^x = h mod n, where ``order`` = ord(g)."""
    h %= n
    xs, ms = [], []
    for q, e in factorint(order):
        qe = q**e
        g0 = pow(g, order // qe, n)
        h0 = pow(h, order // qe, n)
        gq = pow(g0, qe // q, n)
        x = 0
        for k in range(e):
            hk = pow(h0 * pow(g0, -x, n) % n, qe // q ** (k + 1), n)
            x += _bsgs(hk, gq, q, n) * q**k
        xs.append(x)
        ms.append(qe)
    return crt(xs, ms) if xs else 0


def inverse_table(p: int) -> np.ndarray:
    """inv[b] = b^-1 mod p for b in [1, p), inv[0] = 0. Needs p < 2^31."""
    if p >= 1 << 31:
        raise InvalidInput("inverse table needs p < 2^31")
    base = np.arange(p, dtype=np.int64)
    out = np.ones(p, dtype=np.int64)
    e = p - 2
    while e:
        if e & 1:
            out = out * base % p
        base = base * base % p
        e >>= 1
    out[0] = 0
    return out


def primes_in(lo: int, hi: int) -> list[int]:
    """Primes in [lo, hi] via a simple sieve."""
    if hi < 2:
        return []
    sieve = np.ones(hi + 1, dtype=bool)
    sieve[:2] = False
    for q in range(2, isqrt(hi) + 1):
        if sieve[q]:
            sieve[q * q :: q] = False
    return [int(q) for q in np.nonzero(sieve)[0] if q >= lo]
