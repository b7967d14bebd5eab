"""Descent assembly tests against hand-verified instances."""

import pytest

from heronselmer.curve import DescentPair, build_curve, candidate_pairs, torsion_image
from heronselmer.formula import predict
from heronselmer.selmer import (
    canonical_generators,
    compute_selmer,
    coset_representative,
    selmer_rank,
)


def group_for(n, prune=True):
    return compute_selmer(build_curve(n), prune_by_torsion=prune)


def test_rank_zero_group_is_torsion_only():
    g = group_for(15)
    assert g.rank == 0
    assert g.k == 2
    assert g.elements == frozenset(torsion_image(g.curve))
    assert canonical_generators(g) == []
    assert g.generators == (DescentPair(-1, -1), DescentPair(1, 226))


def test_pinned_rank_two_odd():
    g = group_for(391)
    assert g.rank == 2
    assert len(g.elements) == 2 ** (2 + 2)
    assert set(canonical_generators(g)) == {DescentPair(17, 1), DescentPair(1, 76441)}


def test_pinned_rank_two_even():
    g = group_for(130)
    assert g.rank == 2
    assert canonical_generators(g) == [DescentPair(5, 1), DescentPair(13, 1)]


def test_pinned_rank_one_with_product_generator():
    g = group_for(715)
    assert g.rank == 1
    assert canonical_generators(g) == [DescentPair(65, 1)]


def test_pinned_rank_one_single_prime():
    g = group_for(85)
    assert g.rank == 1
    assert canonical_generators(g) == [DescentPair(17, 1)]


def test_group_axioms_hold():
    for n in (2, 3, 6, 15, 85, 130):
        g = group_for(n)
        assert torsion_image(g.curve) <= g.elements
        for a in g.elements:
            for b in g.elements:
                assert a.mul(b) in g.elements
        assert len(g.elements) == 2 ** (g.k + g.rank)


def test_pruned_run_matches_full_enumeration():
    for n in (5, 15, 130):
        full = compute_selmer(build_curve(n), prune_by_torsion=False)
        pruned = compute_selmer(build_curve(n), prune_by_torsion=True)
        assert full.elements == pruned.elements
        assert full.generators == pruned.generators
        assert full.rank == pruned.rank


def test_coset_representative_is_canonical_and_stable():
    for n in (15, 130):
        c = build_curve(n)
        torsion = torsion_image(c)
        seen = {}
        for pair in candidate_pairs(c):
            rep = coset_representative(c, pair)
            assert rep.b1 > 0
            if c.parity == "odd":
                assert rep.b2 % 2 != 0
            else:
                assert rep.b2 % c.q != 0
            # every member of the torsion coset maps to the same rep
            for t in torsion:
                assert coset_representative(c, pair.mul(t)) == rep
            seen.setdefault(rep, set()).add(pair)
        for rep, members in seen.items():
            assert len(members) == 4  # cosets partition into fours


def test_elements_respect_torsion_cosets():
    g = group_for(130)
    torsion = torsion_image(g.curve)
    for e in g.elements:
        for t in torsion:
            assert e.mul(t) in g.elements


def test_odd_parity_b1_balance_of_five_classes():
    # surviving b1 always carries an even number of 5 mod 8 primes
    for n in (15, 85, 715):
        g = group_for(n)
        for e in g.elements:
            fives = sum(1 for p in (3, 5, 7, 11, 13, 17) if e.b1 % p == 0 and p % 8 == 5)
            assert fives % 2 == 0, (n, e)


def test_even_parity_nontorsion_reps_have_unit_b2():
    g = group_for(130)
    identity = DescentPair(1, 1)
    for e in g.elements:
        rep = coset_representative(g.curve, e)
        if rep != identity:
            assert rep.b2 == 1, e


def test_selmer_rank_matches_formula_on_small_instances():
    for n in (2, 3, 5, 6, 10, 15, 85, 130, 391, 715):
        assert selmer_rank(build_curve(n), prune_by_torsion=True) == predict(build_curve(n)).rank, n


def test_generators_lead_with_torsion():
    g = group_for(130)
    assert g.generators[0] == DescentPair(-1, -1)
    assert g.generators[1] == DescentPair(1, 16901)
    assert list(g.generators[2:]) == canonical_generators(g)