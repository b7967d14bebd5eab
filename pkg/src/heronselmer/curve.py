"""Curve-level data for y^2 = x(x-1)(x+n^2) and the descent combinatorics.

A square-free n >= 2 is admitted when its companion is prime: q = (n^2+1)/2
for odd n, q = n^2+1 for even n. The descent classes live in (Q*/Q*^2)^2
with support {2, q} union primes(n) in each coordinate; this module builds
the curve instance, the image of the rational torsion, and the full ordered
candidate list that the Selmer sieve filters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import FactoredInteger, factor_squarefree, is_prime
from .errors import HypothesisFailed

__all__ = (
    "DescentPair",
    "HeronianCurve",
    "build_curve",
    "candidate_pairs",
    "squarefree_mul",
    "torsion_image",
)


def squarefree_mul(a: int, b: int) -> int:
    """Product of two square-free integers reduced modulo squares.

    The result is again square-free, so classes built from a fixed support
    stay canonical under this operation.
    """
    g = gcd(a, b)
    return a * b // (g * g)


@dataclass(frozen=True, order=True)
class DescentPair:
    """A class (b1, b2) in (Q*/Q*^2)^2, stored as signed square-free ints.

    Square-freeness is a constructor-side guarantee: every producer in this
    package multiplies support primes at most once per coordinate or uses
    squarefree_mul, and validate() re-checks it the expensive way.
    """

    b1: int
    b2: int

    def __post_init__(self):
        if self.b1 == 0 or self.b2 == 0:
            raise ValueError("descent coordinates must be nonzero")

    def mul(self, other: "DescentPair") -> "DescentPair":
        return DescentPair(squarefree_mul(self.b1, other.b1), squarefree_mul(self.b2, other.b2))

    def validate(self) -> None:
        for b in (self.b1, self.b2):
            factor_squarefree(abs(b))  # raises NotSquarefree on a repeat

    def as_tuple(self) -> tuple[int, int]:
        return (self.b1, self.b2)


@dataclass(frozen=True)
class HeronianCurve:
    """Validated instance of y^2 = x(x-1)(x+n^2) with its companion prime.

    tau and area record the triangle behind the curve (tan(theta/2) = 1/n,
    integer area n); they are metadata and never enter the descent.
    """

    n: FactoredInteger
    parity: str  # "odd" | "even"
    q: int
    tau: Fraction
    area: int
    omega: dict  # residue mod 8 in {1,3,5,7} -> count of odd prime factors

    @property
    def value(self) -> int:
        return self.n.value

    def support(self) -> tuple[int, ...]:
        """Primes allowed in a descent coordinate: 2, q, and the primes of n."""
        return tuple(sorted({2, self.q, *self.n.factors}))


def build_curve(n: int) -> HeronianCurve:
    """Validate the hypotheses for n and assemble the curve data.

    Raises NotSquarefree for a repeated prime in n, HypothesisFailed when
    n^2+1 does not produce a prime companion of the parity-matched shape.
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    factored = factor_squarefree(n)
    if n % 2 == 1:
        parity = "odd"
        q = (n * n + 1) // 2
    else:
        parity = "even"
        q = n * n + 1
    if not is_prime(q):
        raise HypothesisFailed(
            f"n={n}: companion {q} = {'(n^2+1)/2' if parity == 'odd' else 'n^2+1'} is not prime"
        )
    omega = {1: 0, 3: 0, 5: 0, 7: 0}
    for p in factored.factors:
        if p != 2:
            omega[p % 8] += 1
    assert q != 2 and n % q != 0
    return HeronianCurve(
        n=factored,
        parity=parity,
        q=q,
        tau=Fraction(1, n),
        area=n,
        omega=omega,
    )


def torsion_image(curve: HeronianCurve) -> set:
    """Image of the rational 2-torsion under the descent map: a Klein
    four-group, {(1,1), (1,2q), (-1,-1), (-1,-2q)} for odd n and the same
    with q in place of 2q for even n."""
    t = 2 * curve.q if curve.parity == "odd" else curve.q
    return {
        DescentPair(1, 1),
        DescentPair(1, t),
        DescentPair(-1, -1),
        DescentPair(-1, -t),
    }


def _signed_divisors(support: tuple[int, ...]) -> list:
    """All signed square-free products of a subset of support, sorted."""
    values = [1]
    for p in support:
        values += [v * p for v in values]
    return sorted([-v for v in values] + values)


def candidate_pairs(curve: HeronianCurve) -> list:
    """Every class (b1, b2) supported on {2, q} union primes(n), both signs,
    in lexicographic order. No solvability screening happens here; even the
    classes excluded by positivity or parity arguments are enumerated so the
    sieve can rediscover those exclusions."""
    divisors = _signed_divisors(curve.support())
    return [DescentPair(b1, b2) for b1 in divisors for b2 in divisors]
