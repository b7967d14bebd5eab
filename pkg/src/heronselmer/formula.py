"""Closed-form 2-Selmer rank predictions from the residue classes mod 8 of
the odd primes dividing n.

Writing O_k for the number of prime factors of n congruent to k mod 8:

  odd n,  O_5 = 0:  rank O_1 + 1,      family {(p,1): p = 1 mod 8} + {(1,q)}
  odd n,  O_5 > 0:  rank O_1 + C(O_5,2), family {(p,1): p = 1} + {(t*t',1)}
  even n:           rank O_1 + O_5,    family {(p,1): p = 1 or 5 mod 8}

The middle case carries a caveat: the stated family of C(O_5,2) pairwise
products spans only O_5 - 1 independent classes once O_5 >= 3, so the
verbatim rank and the family's span disagree there. Both numbers are
reported, with a discrepancy flag, and the descent engine stays the
authority on which one reality picks.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .arith import FactoredInteger
from .curve import DescentPair, HeronianCurve

__all__ = ("FormulaPrediction", "omega_counts", "predict")


@dataclass(frozen=True)
class FormulaPrediction:
    applicable: bool
    rank: int  # the verbatim closed-form exponent
    generator_family: tuple  # DescentPair family from the proofs, ordered
    case_tag: str  # "odd_no5" | "odd_with5" | "even"
    span_rank: int  # 2-rank actually spanned by generator_family
    discrepancy: bool  # rank != span_rank (possible only when O_5 >= 3)


def omega_counts(n: FactoredInteger) -> dict:
    """Counts of odd prime factors of n by residue class mod 8."""
    counts = {1: 0, 3: 0, 5: 0, 7: 0}
    for p in n.factors:
        if p != 2:
            counts[p % 8] += 1
    return counts


def predict(curve: HeronianCurve) -> FormulaPrediction:
    """Predicted 2-Selmer rank and generating family for a validated curve.

    Families are ordered: (p,1) classes by p ascending, then product
    classes, then (1,q). applicable is always True here because build_curve
    already enforced the prime-companion hypotheses.
    """
    omega = curve.omega
    ones = [p for p in curve.n.factors if p % 8 == 1]
    fives = [p for p in curve.n.factors if p % 8 == 5]
    if curve.parity == "even":
        family = [DescentPair(p, 1) for p in sorted(ones + fives)]
        rank = omega[1] + omega[5]
        span = rank
        tag = "even"
    elif omega[5] == 0:
        family = [DescentPair(p, 1) for p in ones] + [DescentPair(1, curve.q)]
        rank = omega[1] + 1
        span = rank
        tag = "odd_no5"
    else:
        products = [DescentPair(t1 * t2, 1) for t1, t2 in combinations(fives, 2)]
        family = [DescentPair(p, 1) for p in ones] + products
        rank = omega[1] + omega[5] * (omega[5] - 1) // 2
        # t1t2, t1t3, ... multiply to squares pairwise-dependently: the
        # products span exactly O_5 - 1 classes once any exist
        span = omega[1] + (omega[5] - 1)
        tag = "odd_with5"
    return FormulaPrediction(
        applicable=True,
        rank=rank,
        generator_family=tuple(family),
        case_tag=tag,
        span_rank=span,
        discrepancy=rank != span,
    )
