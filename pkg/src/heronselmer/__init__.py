"""Selmer-group computation for the Heronian curves y^2 = x(x-1)(x+n^2).

For a square-free n whose companion n^2+1 (or (n^2+1)/2 for odd n) is prime,
this package runs a complete 2-descent: it enumerates quartic torsor spaces,
decides their solvability over R and every relevant Q_l with certified
witnesses or obstructions, assembles the 2-Selmer group, and compares the
resulting upper bound for the Mordell-Weil rank against closed-form
predictions driven by the residues mod 8 of the primes dividing n.
"""

from .arith import FactoredInteger, factor_squarefree, is_prime, jacobi, sqrt_mod, valuation
from .curve import DescentPair, HeronianCurve, build_curve, candidate_pairs, torsion_image
from .errors import (
    BudgetExhausted,
    ClosureViolation,
    HeronselmerError,
    HypothesisFailed,
    NotSquarefree,
    Unfactored,
)
from .formula import FormulaPrediction, omega_counts, predict
from .localsolve import (
    HomogeneousSpace,
    LocalSolveConfig,
    LocalVerdict,
    everywhere_locally_solvable,
    locally_solvable,
    places_to_check,
    real_solvable,
    space_for,
    verify_witness,
)
from .selmer import SelmerGroup, canonical_generators, compute_selmer, selmer_rank

__version__ = "0.1.0"

__all__ = (
    "BudgetExhausted",
    "ClosureViolation",
    "DescentPair",
    "FactoredInteger",
    "FormulaPrediction",
    "HeronianCurve",
    "HeronselmerError",
    "HomogeneousSpace",
    "HypothesisFailed",
    "LocalSolveConfig",
    "LocalVerdict",
    "NotSquarefree",
    "SelmerGroup",
    "Unfactored",
    "build_curve",
    "candidate_pairs",
    "canonical_generators",
    "compute_selmer",
    "everywhere_locally_solvable",
    "factor_squarefree",
    "is_prime",
    "jacobi",
    "locally_solvable",
    "omega_counts",
    "places_to_check",
    "predict",
    "real_solvable",
    "selmer_rank",
    "space_for",
    "sqrt_mod",
    "torsion_image",
    "valuation",
    "verify_witness",
)
