"""Class number of Q(sqrt(-p)) by supersingular j-invariant counting.

The fast path (algorithm3) enumerates the qualifying discriminant
window, accumulates the weighted count s_p of discriminants splitting
completely in their real genus fields, subtracts the number t of
pairings sharing a root, and maps s_p - t to h through the residue
class of p mod 8. algorithm2 (quadratic pair scan) and algorithm1
(literal class polynomial roots) recompute the same quantities by
independent routes for cross-checking.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Iterator

from . import classpoly
from .arith import as_perfect_square, is_prime, isqrt, kronecker
from .genus import DiscriminantRecord, classify, real_genus_generators, splits_completely
from .pairing import PairWitness, pair_count_for

__all__ = [
    "ClassNumberReport",
    "qualifying_discriminants",
    "algorithm1",
    "algorithm2",
    "algorithm3",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClassNumberReport:
    """Everything a run produces, cross-consistent by construction."""

    p: int
    s_p: int
    pair_count: int
    branch: int
    supersingular_count: int
    h: int
    members_of_T: tuple[int, ...]
    witnesses: tuple[PairWitness, ...]
    elapsed: float

    def __post_init__(self) -> None:
        if self.branch != self.p % 8 or self.branch not in (1, 3, 5, 7):
            raise ValueError(f"branch {self.branch} inconsistent with p={self.p}")
        if self.supersingular_count != self.s_p - self.pair_count:
            raise ValueError("supersingular_count must equal s_p - pair_count")
        if self.h < 1:
            raise ValueError(f"h={self.h} must be positive")
        n = self.supersingular_count
        ok = (
            2 * n == self.h
            if self.branch in (1, 5)
            else (n == self.h if self.branch == 7 else n == 2 * self.h)
        )
        if not ok:
            raise ValueError(f"h={self.h} breaks the mod-8 relation with #S={n}")


def _check_p(p: int) -> None:
    if p <= 5 or not is_prime(p):
        raise ValueError(f"p={p} must be a prime greater than 5")


def qualifying_discriminants(p: int) -> Iterator[DiscriminantRecord]:
    """Discriminants D < 0 with 3D^2 < 16p and (D/p) = -1, by rising |D|."""
    _check_p(p)
    n = 3
    while 3 * n * n < 16 * p:
        if n % 4 in (0, 3) and kronecker(-n, p) == -1:
            yield classify(-n)
        n += 1


def _window_contributions(p: int, lo: int, hi: int) -> tuple[int, list[int]]:
    """s_p contribution and sqrt(3p)-threshold T members for |D| in [lo, hi)."""
    s = 0
    T = []
    for n in range(lo, hi):
        if 3 * n * n >= 16 * p or n % 4 not in (0, 3) or kronecker(-n, p) != -1:
            continue
        rec = classify(-n)
        gens = real_genus_generators(rec)
        if splits_completely(rec, gens, p):
            s += 1 << (rec.mu - 1)
            if n * n > 3 * p:
                T.append(-n)
    return s, T


def _window_worker(args: tuple[int, int, int]) -> tuple[int, list[int]]:
    return _window_contributions(*args)


def _scan_window(p: int, threads: int) -> tuple[int, list[int]]:
    # slight overshoot is fine: the per-candidate window check is exact
    limit = isqrt(16 * p // 3) + 2
    if threads <= 1 or limit < 4096:
        return _window_contributions(p, 3, limit)
    step = -(-limit // threads)
    bands = [(p, lo, min(lo + step, limit)) for lo in range(3, limit, step)]
    with Pool(threads) as pool:
        parts = pool.map(_window_worker, bands)
    s = sum(part_s for part_s, _ in parts)
    T = [d for _, part_T in parts for d in part_T]
    T.sort(key=abs)
    return s, T


def _finish(p: int, s_p: int, t: int, T: list[int], witnesses: list[PairWitness],
            t0: float) -> ClassNumberReport:
    """Apply the mod-8 branch formula with parity/positivity guards."""
    n = s_p - t
    if n <= 0:
        raise ArithmeticError(f"p={p}: s_p - t = {n} is not positive")
    branch = p % 8
    if branch in (1, 5):
        h = 2 * n
    elif branch == 7:
        h = n
    else:
        if n % 2 != 0:
            raise ArithmeticError(f"p={p}: s_p - t = {n} must be even when p = 3 mod 8")
        h = n // 2
    witnesses.sort(key=lambda w: (-w.d2, -w.d1))
    return ClassNumberReport(
        p=p, s_p=s_p, pair_count=t, branch=branch, supersingular_count=n, h=h,
        members_of_T=tuple(T), witnesses=tuple(witnesses),
        elapsed=time.perf_counter() - t0,
    )


def algorithm3(p: int, threads: int = 1) -> ClassNumberReport:
    """Fast path: modular square roots count the pairings in O~(sqrt p)."""
    _check_p(p)
    t0 = time.perf_counter()
    s_p, T = _scan_window(p, threads)
    members = frozenset(T)
    diagnostics: dict[str, int] = {}
    t = 0
    witnesses: list[PairWitness] = []
    for d2 in T:
        if d2 * d2 > 4 * p:
            count, ws = pair_count_for(d2, p, members.__contains__,
                                       diagnostics=diagnostics)
            t += count
            witnesses.extend(ws)
    stray = diagnostics.get("raw_accepts_outside_T", 0)
    if stray:
        log.warning("p=%d: %d range-passing partner(s) were outside T", p, stray)
    return _finish(p, s_p, t, T, witnesses, t0)


def algorithm2(p: int, threads: int = 1) -> ClassNumberReport:
    """Cross-check variant: pairings by quadratic scan for perfect squares."""
    _check_p(p)
    t0 = time.perf_counter()
    s_p, T = _scan_window(p, threads)
    t = 0
    witnesses: list[PairWitness] = []
    for i, d1 in enumerate(T):
        for d2 in T[i + 1:]:
            x2 = d1 * d2 - 4 * p
            if x2 <= 0:
                continue
            x = as_perfect_square(x2)
            if x is not None:
                t += 1
                big, small = (d1, d2) if abs(d1) > abs(d2) else (d2, d1)
                witnesses.append(PairWitness(small, big, x))
    return _finish(p, s_p, t, T, witnesses, t0)


def algorithm1(p: int, bound: int = 10**6) -> tuple[int, frozenset[int]]:
    """Literal route: union the F_p-roots of H_D over the window.

    Only viable for small p; the bound caps the class polynomial sizes.
    """
    _check_p(p)
    if p > bound:
        raise ValueError(f"p={p} exceeds the class polynomial bound {bound}")
    S: set[int] = set()
    for rec in qualifying_discriminants(p):
        H = classpoly.class_polynomial(rec.D)
        S |= classpoly.roots_mod_p(H, p)
    n = len(S)
    branch = p % 8
    if branch in (1, 5):
        h = 2 * n
    elif branch == 7:
        h = n
    else:
        if n % 2 != 0:
            raise ArithmeticError(f"p={p}: |S| = {n} must be even when p = 3 mod 8")
        h = n // 2
    if h < 1:
        raise ArithmeticError(f"p={p}: empty supersingular set")
    return h, frozenset(S)
