"""Exception hierarchy and process exit codes."""

# CLI exit codes.
EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_DOMAIN = 3
EXIT_BLOWUP = 4
EXIT_INFEASIBLE = 5


class NonholoError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(NonholoError):
    """Bad configuration or arguments; maps to exit code 2."""


class DomainError(NonholoError):
    """A point or cost value lies outside the admissible region."""


class RankDeficiencyError(NonholoError):
    """The frame matrix is singular (or numerically so) at some point."""


class NumericalError(NonholoError):
    """A numerical procedure failed (step collapse, underflow, ...)."""


class NumericalBlowupError(NumericalError):
    """State became non-finite during integration; maps to exit code 4."""

    def __init__(self, t: float, message: str = ""):
        self.t = t
        super().__init__(message or f"state became non-finite at t={t:.6g}")


class HypothesisViolationError(NonholoError):
    """Sampled data contradicts the quadratic-likeness cost hypotheses."""


class InfeasibleBudgetError(NonholoError):
    """The tuning budget admits no parameter choice; maps to exit code 5."""

    def __init__(self, constraint: str, message: str = ""):
        self.constraint = constraint
        super().__init__(message or f"infeasible tuning budget: {constraint}")
