"""Structural property suites behind the `selftest` subcommand.

Each suite sweeps every qualifying n in a range and returns a dict with the
suite name, the number of individual assertions covered, and a list of
concrete counterexamples. A healthy build reports zero violations in all
three.
"""

from __future__ import annotations

from .arith import jacobi, valuation
from .curve import DescentPair, build_curve, candidate_pairs
from .errors import HypothesisFailed, NotSquarefree
from .formula import predict
from .localsolve import (
    INSOLVABLE,
    LocalSolveConfig,
    everywhere_locally_solvable,
    locally_solvable,
    space_for,
)

__all__ = (
    "check_bad_prime_divisors",
    "check_companion_symbols",
    "check_generator_families",
    "hypothesis_range",
    "run_all",
)


def hypothesis_range(lo=2, hi=5000):
    """Curves for every qualifying n in [lo, hi], ascending."""
    for n in range(lo, hi + 1):
        try:
            yield build_curve(n)
        except (HypothesisFailed, NotSquarefree):
            continue


def _square_class(x: int, p: int):
    """(valuation, unit residue class) of x at an odd prime p.

    Scaling b1 or b2 by the square of a p-adic unit is absorbed by z1, or by
    z2 and z3 together, so p-adic solvability of the space depends on the
    pair only through these classes. The dedup below relies on exactly that.
    """
    w = valuation(p, x)
    return w, jacobi((x // p**w) % p, p)


def check_bad_prime_divisors(lo=2, hi=5000, config=None):
    """Odd-parity candidates die at any 3,7 (mod 8) prime of n inside b1,
    and (1,q) dies at every 5 (mod 8) prime of n."""
    config = config or LocalSolveConfig()
    checked = 0
    violations = []
    for curve in hypothesis_range(lo, hi):
        if curve.parity != "odd":
            continue
        bad = [p for p in curve.n.factors if p % 8 in (3, 7)]
        if bad:
            pairs = candidate_pairs(curve)
            for p in bad:
                verdicts = {}
                for pair in pairs:
                    if pair.b1 % p:
                        continue
                    key = (_square_class(pair.b1, p), _square_class(pair.b2, p))
                    if key not in verdicts:
                        verdicts[key] = locally_solvable(
                            space_for(curve, pair), p, config
                        ).status
                    checked += 1
                    if verdicts[key] != INSOLVABLE:
                        violations.append(
                            {
                                "n": curve.value,
                                "place": p,
                                "pair": pair.as_tuple(),
                                "status": verdicts[key],
                            }
                        )
        for p in curve.n.factors:
            if p % 8 != 5:
                continue
            pair = DescentPair(1, curve.q)
            status = locally_solvable(space_for(curve, pair), p, config).status
            checked += 1
            if status != INSOLVABLE:
                violations.append(
                    {
                        "n": curve.value,
                        "place": p,
                        "pair": pair.as_tuple(),
                        "status": status,
                    }
                )
    return {
        "name": "bad-prime-b1-divisors-fail-locally",
        "checked": checked,
        "violations": violations,
    }


def check_generator_families(lo=2, hi=5000, config=None):
    """Every member of the predicted generator family passes the full local
    gauntlet."""
    config = config or LocalSolveConfig()
    checked = 0
    violations = []
    for curve in hypothesis_range(lo, hi):
        for pair in predict(curve).generator_family:
            ok, verdicts = everywhere_locally_solvable(curve, pair, config)
            checked += 1
            if not ok:
                where = next(v for v in verdicts if v.status == INSOLVABLE)
                violations.append(
                    {
                        "n": curve.value,
                        "pair": pair.as_tuple(),
                        "place": where.place,
                        "obstruction": where.obstruction,
                    }
                )
    return {
        "name": "generator-family-everywhere-solvable",
        "checked": checked,
        "violations": violations,
    }


def check_companion_symbols(lo=2, hi=5000):
    """jacobi(p, q) over the primes p of n follows p mod 8.

    Odd parity: with q = (n*n+1)/2 and p | n, reciprocity turns (p/q) into
    (2/p), which is -1 for p = 5 (mod 8) and +1 for p = 1 (mod 8). Even
    parity: q = n*n+1 = 1 (mod p) makes (p/q) = +1 for every odd p of n.
    """
    checked = 0
    violations = []
    for curve in hypothesis_range(lo, hi):
        for p in curve.n.factors:
            if p == 2:
                continue
            if curve.parity == "odd":
                if p % 8 == 5:
                    expected = -1
                elif p % 8 == 1:
                    expected = 1
                else:
                    continue
            else:
                expected = 1
            got = jacobi(p, curve.q)
            checked += 1
            if got != expected:
                violations.append(
                    {"n": curve.value, "p": p, "jacobi": got, "expected": expected}
                )
    return {
        "name": "companion-prime-symbol-pattern",
        "checked": checked,
        "violations": violations,
    }


def run_all(lo=2, hi=5000):
    return [
        check_bad_prime_divisors(lo, hi),
        check_generator_families(lo, hi),
        check_companion_symbols(lo, hi),
    ]
