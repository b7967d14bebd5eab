"""Closed-form predictor tests, frozen against hand-checked instances."""

import pytest

from heronselmer.arith import factor_squarefree, jacobi
from heronselmer.curve import DescentPair, build_curve
from heronselmer.formula import omega_counts, predict


def test_omega_counts_pinned():
    assert omega_counts(factor_squarefree(715)) == {1: 0, 3: 1, 5: 2, 7: 0}
    assert omega_counts(factor_squarefree(391)) == {1: 1, 3: 0, 5: 0, 7: 1}
    assert omega_counts(factor_squarefree(67609)) == {1: 3, 3: 0, 5: 0, 7: 0}
    assert omega_counts(factor_squarefree(2)) == {1: 0, 3: 0, 5: 0, 7: 0}


def test_omega_counts_match_curve_field():
    for n in (2, 6, 15, 26, 85, 130, 391, 715, 2310):
        c = build_curve(n)
        assert omega_counts(c.n) == c.omega


def test_predict_odd_with_five_classes():
    # 715 = 5 * 11 * 13, two primes in class 5 mod 8
    p = predict(build_curve(715))
    assert p.case_tag == "odd_with5"
    assert p.rank == 1
    assert p.span_rank == 1
    assert not p.discrepancy
    assert p.generator_family == (DescentPair(65, 1),)


def test_predict_odd_without_five_classes():
    # 391 = 17 * 23
    p = predict(build_curve(391))
    assert p.case_tag == "odd_no5"
    assert p.rank == 2
    assert p.generator_family == (DescentPair(17, 1), DescentPair(1, 76441))
    assert not p.discrepancy


def test_predict_even():
    p = predict(build_curve(130))
    assert p.case_tag == "even"
    assert p.rank == 2
    assert p.generator_family == (DescentPair(5, 1), DescentPair(13, 1))

    p6 = predict(build_curve(6))
    assert p6.rank == 0
    assert p6.generator_family == ()


def test_predict_high_rank_rows():
    p = predict(build_curve(1241))  # 17 * 73
    assert p.rank == 3
    assert p.generator_family == (
        DescentPair(17, 1),
        DescentPair(73, 1),
        DescentPair(1, 770041),
    )
    p = predict(build_curve(67609))  # 17 * 41 * 97
    assert p.rank == 4
    assert p.generator_family[-1] == DescentPair(1, 2285488441)


def test_predict_flags_family_span_gap():
    # 2405 = 5 * 13 * 37 is the only n <= 5000 with three class-5 primes
    # that passes the prime-companion hypothesis
    p = predict(build_curve(2405))
    assert p.case_tag == "odd_with5"
    assert p.rank == 3  # verbatim count of pairwise products
    assert p.span_rank == 2  # independent classes they actually span
    assert p.discrepancy


def test_family_members_have_allowed_support():
    for n in (130, 391, 715, 2310, 2405, 67609):
        c = build_curve(n)
        support = set(c.support())
        for pair in predict(c).generator_family:
            for b in (pair.b1, pair.b2):
                m = abs(b)
                for prime in support:
                    while m % prime == 0:
                        m //= prime
                assert m == 1, (n, pair)


def test_symbol_pattern_at_companion_prime():
    # for odd-parity curves the residue of p mod 8 pins down jacobi(p, q):
    # +1 for p = 1 mod 8 and -1 for p = 5 mod 8
    for n in (15, 85, 391, 715, 1241, 2405, 4785, 67609):
        try:
            c = build_curve(n)
        except Exception:
            continue
        if c.parity != "odd":
            continue
        for p in c.n.factors:
            if p % 8 == 1:
                assert jacobi(p, c.q) == 1, (n, p)
            elif p % 8 == 5:
                assert jacobi(p, c.q) == -1, (n, p)


def test_even_parity_divisors_are_residues_at_companion():
    for n in (2, 6, 10, 14, 26, 66, 130, 2310, 2730):
        c = build_curve(n)
        if c.parity != "even":
            continue
        for p in c.n.factors:
            if p != 2:
                assert jacobi(p, c.q) == 1, (n, p)
        assert c.q % 8 == 5
        assert jacobi(2, c.q) == -1
