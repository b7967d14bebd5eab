"""Exception types shared across the package."""


class HeronselmerError(Exception):
    """Base class for all package errors."""


class NotSquarefree(HeronselmerError):
    """An integer required to be square-free has a repeated prime factor."""

    def __init__(self, n, prime):
        self.n = n
        self.prime = prime
        super().__init__(f"{n} is divisible by {prime}^2")


class Unfactored(HeronselmerError):
    """Factorization gave up within the configured budget."""

    def __init__(self, n, remaining):
        self.n = n
        self.remaining = remaining
        super().__init__(f"could not factor {n}: unfactored part {remaining}")


class HypothesisFailed(HeronselmerError):
    """n does not satisfy the prime-shape hypothesis of the curve family."""


class BudgetExhausted(HeronselmerError):
    """A local computation ran out of budget before reaching a verdict.

    Carries where the computation stood so the caller can decide whether a
    larger budget would help.
    """

    def __init__(self, message, place=None, level=None, survivors=None):
        self.place = place
        self.level = level
        self.survivors = survivors
        super().__init__(message)


class ClosureViolation(HeronselmerError):
    """The locally solvable classes failed a group axiom (engine bug guard)."""
