"""Independent brute-force oracles.

Two slow-but-simple reference computations used to validate the fast
path: class numbers by exhaustive scan over primitive reduced binary
quadratic forms, and supersingular j-invariant sets in F_p by point
counting with full character sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .arith import is_prime, isqrt

__all__ = [
    "ReducedForm",
    "iter_reduced_forms",
    "forms_class_number",
    "supersingular_set",
    "supersingular_count",
]


@dataclass(frozen=True)
class ReducedForm:
    """A primitive reduced positive definite form ax^2 + bxy + cy^2."""

    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if self.a <= 0 or abs(self.b) > self.a or self.a > self.c:
            raise ValueError(f"({self.a},{self.b},{self.c}) is not reduced")
        if self.b < 0 and (-self.b == self.a or self.a == self.c):
            raise ValueError(f"({self.a},{self.b},{self.c}) breaks the boundary tie rule")
        if math.gcd(math.gcd(self.a, self.b), self.c) != 1:
            raise ValueError(f"({self.a},{self.b},{self.c}) is imprimitive")

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c


def iter_reduced_forms(D: int) -> Iterator[ReducedForm]:
    """Scan all primitive reduced forms of discriminant D < 0.

    a runs to sqrt(|D|/3), b over (-a, a] with b = D (mod 2), and c is
    accepted when integral, >= a, primitive, and b >= 0 on boundary ties.
    """
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a negative discriminant")
    for a in range(1, isqrt(-D // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b - D) % 2 != 0:
                continue
            num = b * b - D
            if num % (4 * a) != 0:
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and (a == c or -b == a):
                continue
            if math.gcd(math.gcd(a, b), c) == 1:
                yield ReducedForm(a, b, c)


def forms_class_number(D: int) -> int:
    """Class number of discriminant D as the reduced-form count. O(|D|)."""
    return sum(1 for _ in iter_reduced_forms(D))


def _chi_table(p: int) -> np.ndarray:
    """Legendre symbol values chi(0..p-1) as an int8 vector."""
    chi = np.full(p, -1, dtype=np.int8)
    chi[0] = 0
    xs = np.arange(1, (p + 1) // 2, dtype=np.int64)
    chi[(xs * xs) % p] = 1
    return chi


def curve_with_j(j: int, p: int) -> tuple[int, int]:
    """Coefficients (a, b) of a short Weierstrass curve over F_p with
    j-invariant j: the standard family 3k(1728-j), 2k(1728-j)^2 with
    k = j, plus the special curves for j = 0 and j = 1728.
    """
    j %= p
    if j == 0:
        return 0, 1
    if j == 1728 % p:
        return 1, 0
    m = (1728 - j) % p
    a = 3 * j % p * m % p
    b = 2 * j % p * m % p * m % p
    return a, b


def supersingular_set(p: int, bound: int = 5000) -> frozenset[int]:
    """All supersingular j-invariants lying in the prime field F_p.

    For each j a curve with that invariant is tested for trace zero by
    the full sum over x of chi(x^3 + ax + b); the trace vanishes exactly
    when the curve is supersingular (p > 5 makes |trace| < p strict).
    Vectorized, O(p^2) additions total.
    """
    if not is_prime(p) or p <= 5:
        raise ValueError(f"p={p} must be a prime > 5")
    if p > bound:
        raise ValueError(f"p={p} exceeds the scan bound {bound}")
    chi = _chi_table(p)
    x = np.arange(p, dtype=np.int64)
    x3 = (x * x % p) * x % p
    found = []
    for j in range(p):
        a, b = curve_with_j(j, p)
        rhs = (x3 + a * x + b) % p
        if int(chi[rhs].sum(dtype=np.int64)) == 0:
            found.append(j)
    return frozenset(found)


def supersingular_count(p: int, bound: int = 5000) -> int:
    """|supersingular_set(p)|, cross-asserted against the class number
    relation: h(-4p)/2, h(-p), or 2h(-p) for p = 1 mod 4, 7 mod 8,
    3 mod 8 respectively. Failure here falsifies the oracle itself.
    """
    n = len(supersingular_set(p, bound))
    if p % 4 == 1:
        expected = forms_class_number(-4 * p)
        if expected % 2 != 0 or n != expected // 2:
            raise ArithmeticError(f"p={p}: |S|={n} but h(-4p)={expected}")
    else:
        h = forms_class_number(-p)
        expected = h if p % 8 == 7 else 2 * h
        if n != expected:
            raise ArithmeticError(f"p={p}: |S|={n} but branch expects {expected}")
    return n
