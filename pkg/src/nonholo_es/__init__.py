"""Extremum seeking for driftless nonholonomic systems.

A fast-oscillating model-based stabilizer keeps the plant state near a
reference that itself descends the measured cost through zero-mean
dithers, so the closed loop seeks the minimizer without a model of the
cost.  The package bundles the controller pieces, a hybrid sample-and-
hold simulator (compiled kernel with pure-Python fallback), verification
tooling for the averaging machinery, and a constructive parameter tuner.
"""

from .costs import SphereCost
from .errors import (
    DomainError,
    HypothesisViolationError,
    InfeasibleBudgetError,
    NonholoError,
    NumericalBlowupError,
    NumericalError,
    RankDeficiencyError,
    ValidationError,
)
from .integrator import (
    HAVE_FASTLOOP,
    PiEpsTrajectory,
    SimConfig,
    hold_boundary_refresh,
    reference_integrate,
    simulate,
)
from .seeker import (
    PAIR_NAMES,
    DitherSchedule,
    GeneratingPair,
    bracket_gain,
    default_schedule,
    dither,
    pair_library,
    seeker_rhs,
)
from .stabilizer import (
    CoefficientVector,
    StabilizerGains,
    coefficients,
    control_value,
    hold_schedule,
)
from .systems import (
    Box,
    BracketSelection,
    ControlSystem,
    FrameMatrix,
    brockett,
    brockett_selection,
    check_rank_condition,
    estimate_alpha,
    frame_matrix,
    get_system,
    lie_bracket,
    register_system,
    unbounded_box,
)

__version__ = "0.1.0"

__all__ = [
    "Box",
    "BracketSelection",
    "CoefficientVector",
    "ControlSystem",
    "DitherSchedule",
    "DomainError",
    "FrameMatrix",
    "GeneratingPair",
    "HAVE_FASTLOOP",
    "HypothesisViolationError",
    "InfeasibleBudgetError",
    "NonholoError",
    "NumericalBlowupError",
    "NumericalError",
    "PAIR_NAMES",
    "PiEpsTrajectory",
    "RankDeficiencyError",
    "SimConfig",
    "SphereCost",
    "StabilizerGains",
    "ValidationError",
    "bracket_gain",
    "brockett",
    "brockett_selection",
    "check_rank_condition",
    "coefficients",
    "control_value",
    "default_schedule",
    "dither",
    "estimate_alpha",
    "frame_matrix",
    "get_system",
    "hold_boundary_refresh",
    "hold_schedule",
    "lie_bracket",
    "pair_library",
    "reference_integrate",
    "register_system",
    "seeker_rhs",
    "simulate",
    "unbounded_box",
]
