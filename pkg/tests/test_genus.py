"""Genus invariants checked against form-counting brute force and
hand-verified multiquadratic fields."""

import pytest

from ssclassnum.arith import as_perfect_square, is_prime, kronecker
from ssclassnum.genus import (
    RealGenusField,
    classify,
    real_genus_generators,
    splits_completely,
)
from ssclassnum.oracles import iter_reduced_forms


def test_classify_rejects_non_discriminants():
    for D in (0, 4, -1, -2, -5, -6, -10, 3):
        with pytest.raises(ValueError):
            classify(D)


def test_classify_basic_fields():
    rec = classify(-15)
    assert rec.n is None
    assert (rec.t_odd, rec.m, rec.mu) == (2, 1, 2)
    rec = classify(-84)  # -4 * 21, 21 = 5 mod 8
    assert rec.n == 21
    assert (rec.t_odd, rec.m, rec.mu) == (2, 0, 3)
    rec = classify(-32)  # n = 8 = 0 mod 8
    assert rec.n == 8
    assert (rec.t_odd, rec.mu) == (0, 2)
    rec = classify(-4)  # n = 1
    assert (rec.n, rec.t_odd, rec.mu) == (1, 0, 1)


def test_mu_counts_two_torsion_classes():
    # The class group has 2^(mu-1) elements of order <= 2, and each such
    # class contains exactly one reduced form with b = 0, a = b, or a = c.
    for absD in range(3, 4000):
        if absD % 4 not in (0, 3):
            continue
        rec = classify(-absD)
        ambiguous = sum(
            1 for f in iter_reduced_forms(-absD)
            if f.b == 0 or f.a == f.b or f.a == f.c
        )
        assert ambiguous == 1 << (rec.mu - 1), (-absD, ambiguous, rec.mu)


def test_generators_are_squarefree_and_independent():
    for absD in range(3, 2500):
        if absD % 4 not in (0, 3):
            continue
        rec = classify(-absD)
        gens = real_genus_generators(rec)
        assert len(gens.radicands) == rec.mu - 1
        assert gens.degree_log2 == rec.mu - 1
        for d in gens.radicands:
            assert d > 1
            assert all(d % (q * q) for q in range(2, d) if q * q <= d), d
        # no nonempty subset of radicands multiplies to a square
        k = len(gens.radicands)
        for mask in range(1, 1 << k):
            prod = 1
            for i in range(k):
                if mask >> i & 1:
                    prod *= gens.radicands[i]
            assert as_perfect_square(prod) is None, (-absD, mask)


def test_generators_hand_cases():
    assert real_genus_generators(classify(-4)).radicands == ()
    assert real_genus_generators(classify(-8)).radicands == ()
    assert real_genus_generators(classify(-11)).radicands == ()
    assert real_genus_generators(classify(-15)).radicands == (5,)
    assert real_genus_generators(classify(-20)).radicands == (5,)
    assert real_genus_generators(classify(-24)).radicands == (2,)
    assert set(real_genus_generators(classify(-84)).radicands) == {3, 7}
    # -120 = 8 * (-3) * 5 as prime discriminants: real part Q(sqrt2, sqrt5)
    assert set(real_genus_generators(classify(-120)).radicands) == {2, 5}


def test_splits_completely_matches_residue_conditions():
    rec = classify(-20)
    gens = real_genus_generators(rec)
    for p in range(7, 500):
        if not is_prime(p) or 20 % p == 0:
            continue
        assert splits_completely(rec, gens, p) == (p % 5 in (1, 4))
    rec = classify(-84)
    gens = real_genus_generators(rec)
    for p in range(11, 500):
        if not is_prime(p) or 84 % p == 0:
            continue
        want = kronecker(3, p) == 1 and kronecker(7, p) == 1
        assert splits_completely(rec, gens, p) == want


def test_splits_completely_vacuous_and_error_cases():
    rec = classify(-8)
    gens = real_genus_generators(rec)
    assert splits_completely(rec, gens, 7)  # rational field: every p splits
    with pytest.raises(ValueError):
        splits_completely(rec, gens, 2)  # 2 divides D
    rec11 = classify(-11)
    with pytest.raises(ValueError):
        splits_completely(rec11, real_genus_generators(rec11), 11)


def test_real_genus_field_is_plain_container():
    f = RealGenusField((2, 5))
    assert f.degree_log2 == 2
    assert f.radicands == (2, 5)
