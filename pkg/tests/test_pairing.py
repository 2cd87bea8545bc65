"""Pair witnesses checked against a direct perfect-square scan."""

import pytest

from ssclassnum.arith import as_perfect_square, factorize, is_prime
from ssclassnum.classnum import qualifying_discriminants
from ssclassnum.pairing import PairWitness, pair_count_for, total_pair_count


def window_T(p: int) -> list[int]:
    return [rec.D for rec in qualifying_discriminants(p) if rec.D * rec.D > 3 * p]


def brute_pairs(T: list[int], p: int) -> set[tuple[int, int, int]]:
    """Every (d1, d2, x) with d1*d2 - x^2 = 4p by testing the square directly."""
    out = set()
    for d2 in T:
        for d1 in T:
            if abs(d1) >= abs(d2):
                continue
            x2 = d1 * d2 - 4 * p
            if x2 <= 0:
                continue
            x = as_perfect_square(x2)
            if x is not None and x >= 1:
                out.add((d1, d2, x))
    return out


def test_pair_witness_recovers_p():
    w = PairWitness(-11, -12, 4)
    assert w.p == 29


def test_pair_witness_validation():
    with pytest.raises(ValueError):
        PairWitness(-12, -11, 4)  # |d1| must be smaller
    with pytest.raises(ValueError):
        PairWitness(11, -12, 4)  # d1 must be negative
    with pytest.raises(ValueError):
        PairWitness(-11, -12, 0)  # x must be positive
    with pytest.raises(ValueError):
        PairWitness(-11, -12, 5)  # 132 - 25 = 107 not divisible by 4
    with pytest.raises(ValueError):
        PairWitness(-3, -4, 2)  # p = 2 outside both window bounds


def test_witnesses_match_brute_square_scan():
    for p in range(7, 3000):
        if not is_prime(p):
            continue
        T = window_T(p)
        members = frozenset(T)
        got = set()
        total = 0
        for d2 in T:
            if d2 * d2 <= 4 * p:
                continue
            count, ws = pair_count_for(d2, p, members.__contains__)
            total += count
            for w in ws:
                assert w.d2 == d2
                assert 1 <= w.x < -d2
                assert (w.x * w.x + 4 * p) % (-d2) == 0
                got.add((w.d1, w.d2, w.x))
        want = brute_pairs(T, p)
        assert got == want, p
        assert total == len(want)
        assert total_pair_count(T, p) == len(want)


def test_membership_filter_and_diagnostics():
    p = 29
    T = window_T(p)
    members = frozenset(T)
    diagnostics: dict[str, int] = {}
    count, ws = pair_count_for(-12, p, members.__contains__, diagnostics=diagnostics)
    assert count == 1
    assert ws == [PairWitness(-11, -12, 4)]
    assert diagnostics.get("raw_accepts_outside_T", 0) == 0
    # an empty membership set rejects the same candidate and records it
    diagnostics = {}
    count, ws = pair_count_for(-12, p, frozenset().__contains__,
                               diagnostics=diagnostics)
    assert (count, ws) == (0, [])
    assert diagnostics["raw_accepts_outside_T"] == 1


def test_no_raw_accepts_outside_window_T():
    # range-passing candidates must already lie in T; the counter stays 0
    for p in range(7, 1500):
        if not is_prime(p):
            continue
        T = window_T(p)
        members = frozenset(T)
        diagnostics: dict[str, int] = {}
        for d2 in T:
            if d2 * d2 > 4 * p:
                pair_count_for(d2, p, members.__contains__,
                               diagnostics=diagnostics)
        assert diagnostics.get("raw_accepts_outside_T", 0) == 0, p


def test_pair_count_for_accepts_precomputed_factorization():
    p = 29
    members = frozenset(window_T(p))
    with_f = pair_count_for(-12, p, members.__contains__, f=factorize(12))
    without = pair_count_for(-12, p, members.__contains__)
    assert with_f == without
    with pytest.raises(ValueError):
        pair_count_for(-12, p, members.__contains__, f=factorize(11))


def test_input_guards():
    with pytest.raises(ValueError):
        pair_count_for(-10, 29, frozenset().__contains__)  # 100 <= 116
    with pytest.raises(ValueError):
        total_pair_count([-11, -11, -12], 29)  # duplicates
