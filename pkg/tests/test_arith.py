"""Exhaustive small-range checks of the integer arithmetic helpers
against brute force."""

import math

import pytest

from ssclassnum.arith import (
    Factorization,
    SqrtSolutionSet,
    all_sqrts_mod,
    as_perfect_square,
    factorize,
    is_prime,
    isqrt,
    kronecker,
    sqrt_mod_prime,
    sqrts_mod_power_of_two,
    sqrts_mod_prime_power,
)


def naive_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[:2] = b"\x00\x00"
    for q in range(2, isqrt(limit) + 1):
        if sieve[q]:
            sieve[q * q :: q] = bytearray(len(sieve[q * q :: q]))
    return [q for q in range(limit + 1) if sieve[q]]


def brute_sqrts(c: int, n: int) -> list[int]:
    return [x for x in range(n) if (x * x - c) % n == 0]


def test_kronecker_matches_euler_criterion():
    for q in naive_primes(300):
        if q == 2:
            continue
        for a in range(q):
            euler = pow(a, (q - 1) // 2, q)
            expected = 0 if euler == 0 else (1 if euler == 1 else -1)
            assert kronecker(a, q) == expected, (a, q)


def test_kronecker_negative_and_large_arguments():
    for q in (3, 7, 11, 101, 997):
        for a in range(-2 * q, 2 * q):
            assert kronecker(a, q) == kronecker(a % q, q)


def test_kronecker_multiplicative_in_numerator():
    for n in (9, 15, 21, 45, 225):
        for a in range(1, n):
            for b in range(1, n):
                assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)


def test_kronecker_rejects_even_or_nonpositive_modulus():
    for n in (0, -3, 2, 10):
        with pytest.raises(ValueError):
            kronecker(5, n)


def test_isqrt_small_sweep_and_big_values():
    for n in range(10**4):
        r = isqrt(n)
        assert r * r <= n < (r + 1) * (r + 1)
    big = 10**40 + 12345
    r = isqrt(big)
    assert r * r <= big < (r + 1) * (r + 1)
    with pytest.raises(ValueError):
        isqrt(-1)


def test_as_perfect_square():
    squares = {k * k for k in range(200)}
    for n in range(200 * 200):
        got = as_perfect_square(n)
        if n in squares:
            assert got is not None and got * got == n
        else:
            assert got is None
    assert as_perfect_square(-4) is None


def test_factorize_reassembles_with_prime_parts():
    for n in range(1, 5000):
        f = factorize(n)
        assert f.value == n
        acc = 1
        prev = 0
        for q, e in f.factors:
            assert q > prev
            assert e >= 1
            assert all(q % d for d in range(2, isqrt(q) + 1)), f"{q} not prime"
            acc *= q**e
            prev = q
        assert acc == n
    with pytest.raises(ValueError):
        factorize(0)


def test_factorization_rejects_bad_tuples():
    with pytest.raises(ValueError):
        Factorization(12, ((3, 1), (2, 2)))  # unsorted
    with pytest.raises(ValueError):
        Factorization(12, ((2, 2), (3, 0)))  # zero exponent
    with pytest.raises(ValueError):
        Factorization(12, ((2, 1), (3, 1)))  # wrong product


def test_is_prime_matches_sieve():
    primes = set(naive_primes(30000))
    for n in range(-5, 30000):
        assert is_prime(n) == (n in primes), n


def test_is_prime_on_strong_pseudoprimes_and_large_inputs():
    # composites that fool single-base tests
    for n in (341, 561, 1105, 2047, 3215031751, 3825123056546413051):
        assert not is_prime(n)
    assert is_prime(2**61 - 1)
    assert is_prime(10**11 + 283)
    assert is_prime(10**12 + 547)
    assert not is_prime(10**12 + 549)


def test_sqrt_mod_prime_exhaustive_small_primes():
    for q in naive_primes(300):
        if q == 2:
            continue
        for c in range(q):
            got = sorted(sqrt_mod_prime(c, q))
            assert got == brute_sqrts(c, q), (c, q)


def test_sqrt_mod_prime_is_memoized_frozenset():
    a = sqrt_mod_prime(2, 7)
    b = sqrt_mod_prime(2, 7)
    assert isinstance(a, frozenset)
    assert a is b


def test_sqrts_mod_prime_power_exhaustive():
    for q in (3, 5, 7, 11):
        e = 2
        while q**e <= 3000:
            n = q**e
            for c in range(n):
                assert sqrts_mod_prime_power(c, q, e) == brute_sqrts(c, n), (c, q, e)
            e += 1


def test_sqrts_mod_power_of_two_exhaustive():
    for e in range(1, 11):
        n = 1 << e
        for c in range(n):
            assert sqrts_mod_power_of_two(c, e) == brute_sqrts(c, n), (c, e)


def test_all_sqrts_mod_exhaustive_small_moduli():
    for n in range(1, 600):
        f = factorize(n)
        for c in range(n):
            got = all_sqrts_mod(c, n, f)
            assert got.modulus == n
            assert got.target == c
            assert list(got.solutions) == brute_sqrts(c, n), (c, n)


def test_all_sqrts_mod_structured_large_moduli():
    # many prime factors, high powers of two, odd prime powers mixed
    for n in (720, 1024, 1152, 4095, 4096, 7350, 9800):
        f = factorize(n)
        for c in range(0, n, 7):
            assert list(all_sqrts_mod(c, n, f).solutions) == brute_sqrts(c, n), (c, n)


def test_all_sqrts_mod_reduces_target_and_checks_factorization():
    f = factorize(360)
    assert all_sqrts_mod(361, 360, f).solutions == all_sqrts_mod(1, 360, f).solutions
    with pytest.raises(ValueError):
        all_sqrts_mod(1, 360, factorize(12))


def test_sqrt_solution_set_validates():
    with pytest.raises(ValueError):
        SqrtSolutionSet(12, 1, (5, 1))  # out of order
    with pytest.raises(ValueError):
        SqrtSolutionSet(12, 1, (1, 13))  # out of range
    with pytest.raises(ValueError):
        SqrtSolutionSet(12, 1, (2,))  # 4 != 1 mod 12
    ok = SqrtSolutionSet(12, 1, (1, 5, 7, 11))
    assert ok.solutions == (1, 5, 7, 11)
