"""Assembly of the 2-Selmer group from the local verdicts.

The Selmer elements are exactly the candidate classes whose torsor is
solvable at the real place and at every relevant prime. The filtered set is
re-verified to be a subgroup containing the torsion image before any rank
is read off |S| = 2^(k + rank); a violation means an engine bug, never a
silently wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curve import DescentPair, HeronianCurve, candidate_pairs, squarefree_mul, torsion_image
from .errors import ClosureViolation
from .localsolve import LocalSolveConfig, everywhere_locally_solvable

__all__ = (
    "SelmerGroup",
    "assemble_group",
    "canonical_generators",
    "compute_selmer",
    "coset_representative",
    "selmer_rank",
)


@dataclass(frozen=True)
class SelmerGroup:
    curve: HeronianCurve
    elements: frozenset  # of DescentPair, a subgroup of (Q*/Q*^2)^2
    generators: tuple  # torsion generators first, then canonical non-torsion
    k: int  # log2 of the torsion image size
    rank: int  # log2 |elements| - k

    def contains(self, pair: DescentPair) -> bool:
        return pair in self.elements


def _torsion_unit(curve: HeronianCurve) -> int:
    return 2 * curve.q if curve.parity == "odd" else curve.q


def coset_representative(curve: HeronianCurve, pair: DescentPair) -> DescentPair:
    """The distinguished member of the torsion coset of a class.

    Each coset {(b1,b2), (b1,t*b2), (-b1,-b2), (-b1,-t*b2)} has exactly two
    members with b1 > 0, and exactly one of their b2 values avoids the
    torsion unit t: odd b2 for odd parity (t = 2q), b2 coprime to q for
    even parity (t = q). Cosets that survive the real place always get a
    representative with b2 > 0 as well.
    """
    t = _torsion_unit(curve)
    b1, b2 = pair.b1, pair.b2
    if b1 < 0:
        b1, b2 = -b1, -b2
    if curve.parity == "odd":
        if b2 % 2 == 0:
            b2 = squarefree_mul(b2, t)
    else:
        if b2 % curve.q == 0:
            b2 = squarefree_mul(b2, t)
    return DescentPair(b1, b2)


def compute_selmer(
    curve: HeronianCurve,
    config: LocalSolveConfig = LocalSolveConfig(),
    prune_by_torsion: bool = False,
) -> SelmerGroup:
    """Filter every candidate class through the local engines and assemble
    the group.

    prune_by_torsion evaluates one representative per torsion coset and
    reuses its verdict for the other three members; local solvability is
    coset-invariant because the torsion classes come from rational points.
    The pruned run is asserted to match the full run in the test suite, and
    the default stays the full enumeration.
    """
    elements = set()
    verdict_cache: dict = {}
    for pair in candidate_pairs(curve):
        if prune_by_torsion:
            rep = coset_representative(curve, pair)
            if rep not in verdict_cache:
                verdict_cache[rep] = everywhere_locally_solvable(curve, rep, config)[0]
            solvable = verdict_cache[rep]
        else:
            solvable = everywhere_locally_solvable(curve, pair, config)[0]
        if solvable:
            elements.add(pair)
    return assemble_group(curve, elements)


def assemble_group(curve: HeronianCurve, elements) -> SelmerGroup:
    """Package locally solvable classes, re-verifying the group structure.

    Callers that filter candidates themselves (the CLI does, to spread the
    local checks over worker processes) funnel through here so the subgroup
    and size checks are never skipped.
    """
    torsion = torsion_image(curve)
    elements = set(elements)
    missing = torsion - elements
    if missing:
        raise ClosureViolation(
            f"torsion classes {sorted(p.as_tuple() for p in missing)} "
            f"were rejected locally for n={curve.value}"
        )
    for a in elements:
        for b in elements:
            if a.mul(b) not in elements:
                raise ClosureViolation(
                    f"product {a.as_tuple()} * {b.as_tuple()} escapes the "
                    f"filtered set for n={curve.value}"
                )
    size = len(elements)
    k = len(torsion).bit_length() - 1
    if size & (size - 1) or size < len(torsion):
        raise ClosureViolation(f"|S| = {size} is not a power of two for n={curve.value}")
    rank = size.bit_length() - 1 - k

    group = SelmerGroup(
        curve=curve,
        elements=frozenset(elements),
        generators=(),
        k=k,
        rank=rank,
    )
    torsion_gens = (DescentPair(-1, -1), DescentPair(1, _torsion_unit(curve)))
    gens = torsion_gens + tuple(canonical_generators(group))
    return SelmerGroup(
        curve=curve, elements=group.elements, generators=gens, k=k, rank=rank
    )


def canonical_generators(group: SelmerGroup) -> list:
    """Greedy minimal generators of the quotient by the torsion image.

    Representatives are the distinguished coset members, scanned in
    lexicographic order; each one outside the current span is adopted. In
    an elementary abelian 2-group this yields exactly `rank` generators,
    deterministically."""
    curve = group.curve
    identity = coset_representative(curve, DescentPair(1, 1))
    reps = sorted(
        {coset_representative(curve, e) for e in group.elements} - {identity},
        key=lambda p: (p.b1, p.b2),
    )
    span = {identity}
    gens = []
    for rep in reps:
        if rep in span:
            continue
        gens.append(rep)
        span |= {coset_representative(curve, s.mul(rep)) for s in span}
    assert len(gens) == group.rank
    return gens


def selmer_rank(
    curve: HeronianCurve,
    config: LocalSolveConfig = LocalSolveConfig(),
    prune_by_torsion: bool = False,
) -> int:
    return compute_selmer(curve, config, prune_by_torsion=prune_by_torsion).rank
