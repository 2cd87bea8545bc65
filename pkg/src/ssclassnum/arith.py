"""Exact integer arithmetic: Kronecker symbols, integer square roots,
deterministic factorization, and complete solution sets of x^2 = c (mod n).

Everything here is pure and allocation-light; the class number pipeline
calls these primitives once per enumerated discriminant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

__all__ = [
    "Factorization",
    "SqrtSolutionSet",
    "kronecker",
    "isqrt",
    "as_perfect_square",
    "factorize",
    "is_prime",
    "sqrt_mod_prime",
    "sqrts_mod_prime_power",
    "sqrts_mod_power_of_two",
    "all_sqrts_mod",
]


@dataclass(frozen=True)
class Factorization:
    """Complete prime factorization of a positive integer.

    factors is sorted by prime; every exponent is >= 1 and the product
    of prime**exponent reassembles value.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        acc = 1
        last = 0
        for q, e in self.factors:
            if q <= last or e < 1:
                raise ValueError(f"bad factor list for {self.value}: {self.factors}")
            last = q
            acc *= q**e
        if acc != self.value:
            raise ValueError(f"factors {self.factors} do not reassemble {self.value}")


@dataclass(frozen=True)
class SqrtSolutionSet:
    """All residues s in [0, modulus) with s^2 = target (mod modulus),
    strictly increasing.
    """

    modulus: int
    target: int
    solutions: tuple[int, ...]

    def __post_init__(self):
        prev = -1
        for s in self.solutions:
            if s <= prev or s >= self.modulus:
                raise ValueError(f"solutions out of order or range mod {self.modulus}")
            if (s * s - self.target) % self.modulus != 0:
                raise ValueError(f"{s}^2 != {self.target} mod {self.modulus}")
            prev = s


def kronecker(a: int, n: int) -> int:
    """Kronecker (Jacobi) symbol (a/n) for odd n >= 1.

    Coincides with the Legendre symbol when n is prime, which is the only
    case the pipeline relies on; the general Jacobi recursion costs
    O(log a log n) and needs no factorization.
    """
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"kronecker needs positive odd n, got {n}")
    a %= n
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def isqrt(n: int) -> int:
    """Floor of the square root; exact for arbitrarily large n."""
    if n < 0:
        raise ValueError(f"isqrt of negative {n}")
    return math.isqrt(n)


def as_perfect_square(n: int) -> int | None:
    """Return r with r*r == n if n is a perfect square, else None."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


# Increments that skip multiples of 2, 3, 5 after the 7 offset.
_WHEEL = (4, 2, 4, 2, 4, 6, 2, 6)


def factorize(n: int) -> Factorization:
    """Factor n >= 1 by trial division with a 2-3-5 wheel.

    Deterministic and complete. Intended for n up to a few times 10^8;
    cost is O(sqrt(n)) divisions.
    """
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    value = n
    factors = []
    for q in (2, 3, 5):
        if n % q == 0:
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            factors.append((q, e))
    q = 7
    i = 0
    while q * q <= n:
        if n % q == 0:
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            factors.append((q, e))
        q += _WHEEL[i]
        i = (i + 1) & 7
    if n > 1:
        factors.append((n, 1))
    return Factorization(value, tuple(factors))


# Bases proving Miller-Rabin deterministic for n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_PROVEN_BOUND = 3317044064679887385961981


def _miller_rabin(n: int, base: int) -> bool:
    if base % n == 0:
        return True
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _strong_lucas(n: int) -> bool:
    """Strong Lucas test with Selfridge parameters (for the BPSW combination)."""
    d = 5
    while True:
        k = kronecker(d, n) if n % 2 else 0
        if k == -1:
            break
        if k == 0 and abs(d) != n:
            return False
        d = -d - 2 if d > 0 else -d + 2
    p, q = 1, (1 - d) // 4
    # factor n+1 = m * 2^s with m odd
    m = n + 1
    s = 0
    while m % 2 == 0:
        m //= 2
        s += 1
    # Lucas sequences U_m, V_m by binary chain
    u, v, qk = 1, p, q
    for bit in bin(m)[3:]:
        u = u * v % n
        v = (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = (p * u + v) % n, (d * u + p * v) % n
            if u % 2:
                u += n
            if v % 2:
                v += n
            u, v = u // 2 % n, v // 2 % n
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        if v == 0:
            return True
        qk = qk * qk % n
    return False


def is_prime(n: int) -> bool:
    """Deterministic primality for n < 3.3e24 (proven Miller-Rabin base set);
    Baillie-PSW (MR base 2 + strong Lucas) beyond, with no known counterexample.
    """
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    if n < _MR_PROVEN_BOUND:
        return all(_miller_rabin(n, b) for b in _MR_BASES)
    return _miller_rabin(n, 2) and _strong_lucas(n)


@lru_cache(maxsize=None)
def _tonelli_setup(q: int) -> tuple[int, int, int]:
    """(odd part d of q-1, 2-valuation s, generator of the 2-Sylow);
    the non-residue is found by sequential search 2, 3, 5, ...
    """
    d = q - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    z = 2
    while kronecker(z, q) != -1:
        z += 1
    return d, s, pow(z, d, q)


_EMPTY: frozenset[int] = frozenset()


@lru_cache(maxsize=1 << 17)
def sqrt_mod_prime(c: int, q: int) -> frozenset[int]:
    """Solutions of x^2 = c (mod q) for an odd prime q.

    Returns {r, q-r} when c is a nonzero residue, {0} when q | c, and
    the empty set for a non-residue — detected by verifying the
    candidate root rather than a separate Euler test. Tonelli-Shanks
    in the 1 mod 4 case. Memoized: the pipeline resolves the same
    residue classes against the same small primes over and over.
    """
    c %= q
    if c == 0:
        return frozenset((0,))
    if q % 4 == 3:
        r = pow(c, (q + 1) // 4, q)
        return frozenset((r, q - r)) if r * r % q == c else _EMPTY
    d, s, g = _tonelli_setup(q)
    y = pow(c, (d - 1) // 2, q)  # one pow yields both c^d and c^((d+1)/2)
    r = y * c % q
    t = y * r % q
    m = s
    while t != 1:
        i = 0
        t2 = t
        while t2 != 1 and i < m:
            t2 = t2 * t2 % q
            i += 1
        if i == m:
            return _EMPTY  # t has full 2-order: c is a non-residue
        b = pow(g, 1 << (m - i - 1), q)
        r = r * b % q
        g = b * b % q
        t = t * g % q
        m = i
    return frozenset((r, q - r))


def sqrts_mod_prime_power(c: int, q: int, e: int) -> list[int]:
    """All residues r mod q^e with r^2 = c (mod q^e), for odd prime q.

    Strips even powers of q from c, Hensel-lifts the unit part, then
    rebuilds the full solution set (2 * q^(v/2) residues when c = q^v * u).
    """
    modulus = q**e
    c %= modulus
    if e == 1:
        return sorted(sqrt_mod_prime(c, q))
    if c == 0:
        # x^2 = 0 (mod q^e)  <=>  q^ceil(e/2) | x
        step = q ** ((e + 1) // 2)
        return list(range(0, modulus, step))
    v = 0
    u = c
    while u % q == 0:
        u //= q
        v += 1
    if v % 2 == 1:
        return []
    w = v // 2
    unit_exp = e - v
    roots = sqrt_mod_prime(u % q, q)
    if not roots:
        return []
    r = min(roots)
    # Hensel: simple root of f(x) = x^2 - u since 2r is a unit mod q
    mod_k = q
    while mod_k < q**unit_exp:
        mod_k *= q
        inv = pow(2 * r, -1, mod_k)
        r = (r - (r * r - u) * inv) % mod_k
    mod_u = q**unit_exp
    r %= mod_u
    out = []
    qw = q**w
    lift_step = mod_u  # distinct solutions differ by q^(e-v) in the unit layer
    for y0 in (r, mod_u - r):
        for t in range(qw):
            out.append((qw * (y0 + t * lift_step)) % modulus)
    return sorted(set(out))


# Solution tables for moduli 2, 4, 8 (index: e, then target).
_POW2_SMALL = (
    None,
    {0: (0,), 1: (1,)},
    {0: (0, 2), 1: (1, 3)},
    {0: (0, 4), 1: (1, 3, 5, 7), 4: (2, 6)},
)


def sqrts_mod_power_of_two(c: int, e: int) -> list[int]:
    """All residues x mod 2^e with x^2 = c (mod 2^e).

    For e >= 3 and odd c there are solutions iff c = 1 (mod 8), and then
    exactly four of them. Even c recurses through c/4.
    """
    modulus = 1 << e
    c %= modulus
    if e <= 3:
        return list(_POW2_SMALL[e].get(c, ()))
    if c % 2 == 1:
        if c % 8 != 1:
            return []
        r = 1
        for k in range(3, e):
            if (r * r - c) % (1 << (k + 1)) != 0:
                r += 1 << (k - 1)
        half = 1 << (e - 1)
        return sorted({r % modulus, (half - r) % modulus, (half + r) % modulus, -r % modulus})
    if c % 4 != 0:
        return []
    inner = sqrts_mod_power_of_two(c // 4, e - 2)
    half = 1 << (e - 1)
    return sorted({(2 * y + s * half) % modulus for y in inner for s in (0, 1)})


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """Residue mod m1*m2 matching r1 mod m1 and r2 mod m2 (coprime moduli)."""
    return (r1 + (r2 - r1) * pow(m1, -1, m2) % m2 * m1) % (m1 * m2)


def _crt_level(acc: list[int], m: int, sols: Iterable[int], mod_i: int) -> list[int]:
    """Extend residues acc mod m by each solution mod mod_i; the inverse
    of m is computed once for the whole level.
    """
    inv = pow(m, -1, mod_i)
    mm = m * mod_i
    return [(r + (s - r) * inv % mod_i * m) % mm for r in acc for s in sols]


def all_sqrts_mod(c: int, n: int, f: Factorization) -> SqrtSolutionSet:
    """Complete solution set of x^2 = c (mod n), assembled by CRT.

    f must be the factorization of n. The empty set is a valid result.
    """
    if f.value != n:
        raise ValueError(f"factorization is of {f.value}, not {n}")
    c %= n
    if n == 1:
        return SqrtSolutionSet(1, 0, (0,))
    factors = f.factors
    if len(factors) == 1:
        q, e = factors[0]
        if q == 2:
            sols = sqrts_mod_power_of_two(c, e)
        elif e == 1:
            sols = sorted(sqrt_mod_prime(c, q))
        else:
            sols = sqrts_mod_prime_power(c, q, e)
        return SqrtSolutionSet(n, c, tuple(sols))
    acc = [0]
    m = 1
    for q, e in factors:
        if q == 2:
            sols = sqrts_mod_power_of_two(c, e)
        elif e == 1:
            sols = sqrt_mod_prime(c % q, q)  # reduced first: memo keys must collide
        else:
            sols = sqrts_mod_prime_power(c, q, e)
        if not sols:
            return SqrtSolutionSet(n, c, ())
        mod_i = q**e
        acc = _crt_level(acc, m, sols, mod_i)
        m *= mod_i
    return SqrtSolutionSet(n, c, tuple(sorted(acc)))
