"""Genus-theoretic classification of imaginary quadratic discriminants.

For a discriminant D < 0 this module computes the 2-torsion exponent mu
(the class group has 2^(mu-1) elements of order <= 2), the squarefree
radicands generating the maximal real subfield of the genus field, and
the complete-splitting test for a prime in that multiquadratic field.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import Factorization, factorize, kronecker

__all__ = [
    "DiscriminantRecord",
    "RealGenusField",
    "classify",
    "real_genus_generators",
    "splits_completely",
]


@dataclass(frozen=True)
class DiscriminantRecord:
    """A negative discriminant with its factorization and genus invariants.

    n is |D|/4 when 4 | D, else None. t_odd counts distinct odd primes
    dividing D, m those congruent to 1 mod 4, mu the 2-torsion exponent.
    """

    D: int
    abs_factorization: Factorization
    n: int | None
    t_odd: int
    m: int
    mu: int


@dataclass(frozen=True)
class RealGenusField:
    """Multiplicatively independent squarefree radicands d_i > 1 generating
    the real multiquadratic field Q(sqrt(d_1), ..., sqrt(d_k)); k = mu - 1.
    """

    radicands: tuple[int, ...]

    @property
    def degree_log2(self) -> int:
        return len(self.radicands)


def classify(D: int) -> DiscriminantRecord:
    """Populate the genus invariants of a negative discriminant.

    mu follows the standard 2-torsion table: for odd D it equals the
    number t of odd prime divisors; for D = -4n it is t, t+1, t+1 or t+2
    according to n mod 4 (3; 1 or 2; 4 mod 8; 0 mod 8).
    """
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a negative discriminant")
    f = factorize(-D)
    odd_primes = [q for q, _ in f.factors if q != 2]
    t = len(odd_primes)
    m = sum(1 for q in odd_primes if q % 4 == 1)
    if D % 2 != 0:
        n = None
        mu = t
    else:
        n = -D // 4
        if n % 4 == 3:
            mu = t
        elif n % 4 in (1, 2):
            mu = t + 1
        elif n % 8 == 4:
            mu = t + 1
        else:  # n = 0 mod 8
            mu = t + 2
    return DiscriminantRecord(D, f, n, t, m, mu)


def _squarefree_kernel(n: int) -> tuple[int, frozenset[int]]:
    """Positive squarefree part of n and its prime support."""
    support = frozenset(q for q, e in factorize(n).factors if e % 2 == 1)
    kernel = 1
    for q in support:
        kernel *= q
    return kernel, support


def _independent_radicands(candidates: list[int]) -> list[int]:
    """Reduce to a GF(2)-independent set of squarefree kernels.

    Each candidate maps to its prime-support vector; Gaussian elimination
    keeps the first representative of every independent direction.
    Dependent radicands lie in the field generated by the kept ones.
    """
    basis: list[tuple[frozenset[int], int]] = []  # (reduced support, kernel)
    kept = []
    for cand in candidates:
        kernel, support = _squarefree_kernel(cand)
        if kernel == 1:
            continue
        reduced = support
        for pivot_support, _ in basis:
            if min(pivot_support) in reduced:
                reduced = reduced ^ pivot_support
        if reduced:
            basis.append((reduced, kernel))
            basis.sort(key=lambda bv: min(bv[0]))
            kept.append(kernel)
    return kept


def real_genus_generators(rec: DiscriminantRecord) -> RealGenusField:
    """Radicands generating the maximal real subfield of the genus field.

    The five cases split on D odd / n mod 8, with p_i the odd primes
    = 1 mod 4 dividing D and q_j = -p_j for those = 3 mod 4. Radicands
    are reduced to squarefree kernels, trivial and dependent ones are
    dropped, and the count is checked against mu - 1.
    """
    D = rec.D
    plus = [q for q, _ in rec.abs_factorization.factors if q % 4 == 1]
    minus = [q for q, _ in rec.abs_factorization.factors if q % 4 == 3]
    n = rec.n

    if n is None or n % 4 == 3:
        candidates = plus + [D // -q for q in minus]
    elif n % 8 in (1, 4, 5):
        candidates = plus + minus
    elif n % 8 == 2:
        candidates = plus + [2 * q for q in minus]
    elif n % 8 == 6:
        candidates = [2] + plus + [D // -q for q in minus]
    else:  # n = 0 mod 8
        candidates = [2] + plus + minus

    radicands = _independent_radicands(candidates)
    if len(radicands) != rec.mu - 1:
        raise ArithmeticError(
            f"D={D}: got {len(radicands)} independent radicands, expected mu-1={rec.mu - 1}"
        )
    return RealGenusField(tuple(radicands))


def splits_completely(rec: DiscriminantRecord, gens: RealGenusField, p: int) -> bool:
    """Whether p splits completely in the real multiquadratic field.

    True iff every generating radicand is a quadratic residue mod p;
    vacuously true for the rational field. Requires p coprime to D.
    """
    if -rec.D % p == 0:
        raise ValueError(f"p={p} divides D={rec.D}")
    for d in gens.radicands:
        if kronecker(d, p) != 1:
            return False
    return True
