"""Counting discriminant pairs whose class polynomials share a root mod p.

A shared root in F_p corresponds to an integer solution of
d1*d2 - x^2 = 4p inside the window sqrt(3p) < |d1| < |d2| < (4/sqrt(3))sqrt(p).
For each candidate d2 the solutions of x^2 = -4p (mod |d2|) are lifted
to exact witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import Factorization, all_sqrts_mod, factorize

__all__ = ["PairWitness", "pair_count_for", "total_pair_count"]


@dataclass(frozen=True)
class PairWitness:
    """An exact certificate d1*d2 - x^2 = 4p of a shared root.

    The implied p is recovered from the fields, so the defining equation
    and both window bounds are re-checked on construction.
    """

    d1: int
    d2: int
    x: int

    def __post_init__(self) -> None:
        if self.d1 >= 0 or self.d2 >= 0 or abs(self.d1) >= abs(self.d2):
            raise ValueError(f"witness ({self.d1},{self.d2},{self.x}) breaks ordering")
        if self.x < 1:
            raise ValueError(f"witness ({self.d1},{self.d2},{self.x}) needs x >= 1")
        four_p = self.d1 * self.d2 - self.x * self.x
        if four_p <= 0 or four_p % 4 != 0:
            raise ValueError(f"({self.d1},{self.d2},{self.x}) does not certify any p")
        p = four_p // 4
        if not (3 * p < self.d1 * self.d1 and 3 * self.d2 * self.d2 < 16 * p):
            raise ValueError(f"({self.d1},{self.d2},{self.x}) outside the window for p={p}")

    @property
    def p(self) -> int:
        return (self.d1 * self.d2 - self.x * self.x) // 4


def pair_count_for(
    d2: int,
    p: int,
    membership,
    f: Factorization | None = None,
    diagnostics: dict[str, int] | None = None,
) -> tuple[int, list[PairWitness]]:
    """Witnesses pairing the fixed d2 with smaller qualifying partners.

    Solves x^2 = -4p (mod |d2|); a solution is kept when the derived
    partner c = (x^2 + 4p)/|d2| is exact, sqrt(3p) < c < |d2|, -c is a
    discriminant, and membership(-c) holds. The membership test is not
    part of the raw range filter; diagnostics["raw_accepts_outside_T"]
    counts candidates that pass the ranges but fail membership.
    """
    n = -d2
    if n <= 0 or d2 * d2 <= 4 * p:
        raise ValueError(f"d2={d2} is not a pairing candidate for p={p}")
    if f is None:
        f = factorize(n)
    count = 0
    witnesses = []
    for x in all_sqrts_mod(-4 * p, n, f).solutions:
        num = x * x + 4 * p
        if num % n != 0:
            continue
        c = num // n
        if not (3 * p < c * c and c < n):
            continue
        if -c % 4 not in (0, 1):
            continue
        if membership(-c):
            count += 1
            witnesses.append(PairWitness(-c, d2, x))
        elif diagnostics is not None:
            diagnostics["raw_accepts_outside_T"] = (
                diagnostics.get("raw_accepts_outside_T", 0) + 1
            )
    return count, witnesses


def total_pair_count(T: list[int], p: int) -> int:
    """Sum of pair counts over all d2 in T, each unordered pair once.

    Only d2 with d2^2 > 4p can head a pair: the partner bound
    |d1| < |d2| with d1*d2 > 4p forces it.
    """
    members = frozenset(T)
    if len(members) != len(T):
        raise ValueError("T contains duplicates")
    total = 0
    for d2 in T:
        if d2 * d2 > 4 * p:
            count, _ = pair_count_for(d2, p, members.__contains__)
            total += count
    return total
