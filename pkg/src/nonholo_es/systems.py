"""Driftless control-affine systems, Lie brackets, and frame matrices.

A system is ``xdot = sum_i u_i f_i(x)`` with m < n control fields on a box
domain.  The frame matrix stacks selected fields and pairwise Lie brackets
as columns; its inverse maps desired displacements to controller
coefficients.  Field indices, like the index sets ``s1``/``s2``, are
1-based to match the usual notation for these systems.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError, RankDeficiencyError, ValidationError

FieldFn = Callable[[np.ndarray], np.ndarray]
JacobianFn = Callable[[np.ndarray], np.ndarray]

DEFAULT_COND_TOL = 1e8


def fd_step(x: np.ndarray) -> float:
    """Scale-aware central-difference step."""
    return max(1e-6, 1e-8 * (1.0 + float(np.linalg.norm(x))))


def fd_jacobian(f: FieldFn, x: np.ndarray, h: Optional[float] = None) -> np.ndarray:
    """Jacobian of a vector field by central differences."""
    x = np.asarray(x, dtype=float)
    h = fd_step(x) if h is None else h
    if h == 0.0:
        raise ValidationError("finite-difference step underflowed to zero")
    cols = []
    for k in range(x.size):
        e = np.zeros_like(x)
        e[k] = h
        cols.append((np.asarray(f(x + e), dtype=float) - np.asarray(f(x - e), dtype=float)) / (2.0 * h))
    return np.column_stack(cols)


@dataclass(frozen=True)
class Box:
    """Axis-aligned box; entries of lower/upper may be +-inf."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.lower, dtype=float)
        hi = np.asarray(self.upper, dtype=float)
        if lo.shape != hi.shape or lo.ndim != 1:
            raise ValidationError("box bounds must be 1-d arrays of equal length")
        if np.any(lo >= hi):
            raise ValidationError("box lower bounds must be strictly below upper bounds")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def dim(self) -> int:
        return self.lower.size

    def contains(self, x: np.ndarray) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))

    def is_bounded(self) -> bool:
        return bool(np.all(np.isfinite(self.lower)) and np.all(np.isfinite(self.upper)))

    @property
    def center(self) -> np.ndarray:
        if not self.is_bounded():
            raise ValidationError("center undefined for an unbounded box")
        return 0.5 * (self.lower + self.upper)

    def sample(self, count: int, seed: int = 0) -> np.ndarray:
        """Deterministic cloud: center first, then seeded uniform points."""
        if not self.is_bounded():
            raise ValidationError("cannot sample an unbounded box")
        if count < 1:
            raise ValidationError("need at least one sample")
        rng = np.random.default_rng(seed)
        pts = [self.center]
        if count > 1:
            pts.append(rng.uniform(self.lower, self.upper, size=(count - 1, self.dim)))
            return np.vstack([pts[0][None, :], pts[1]])
        return np.asarray(pts)

    def corners(self) -> np.ndarray:
        if not self.is_bounded():
            raise ValidationError("corners undefined for an unbounded box")
        n = self.dim
        out = np.empty((2**n, n))
        for i in range(2**n):
            for k in range(n):
                out[i, k] = self.upper[k] if (i >> k) & 1 else self.lower[k]
        return out

    def grid(self, per_axis: int) -> np.ndarray:
        if not self.is_bounded():
            raise ValidationError("grid undefined for an unbounded box")
        axes = [np.linspace(self.lower[k], self.upper[k], per_axis) for k in range(self.dim)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.column_stack([m.ravel() for m in mesh])

    def dist_to_boundary(self, x: np.ndarray) -> float:
        x = np.asarray(x, dtype=float)
        return float(np.min(np.minimum(x - self.lower, self.upper - x)))


def unbounded_box(n: int) -> Box:
    return Box(np.full(n, -np.inf), np.full(n, np.inf))


@dataclass(frozen=True)
class ControlSystem:
    """Driftless plant: dimensions, control fields, optional jacobians, domain."""

    n: int
    m: int
    fields: Sequence[FieldFn]
    jacobians: Optional[Sequence[JacobianFn]] = None
    domain: Box = None  # type: ignore[assignment]
    name: str = ""

    def __post_init__(self):
        if self.m >= self.n:
            raise ValidationError(f"need m < n, got m={self.m}, n={self.n}")
        if len(self.fields) != self.m:
            raise ValidationError(f"expected {self.m} fields, got {len(self.fields)}")
        if self.jacobians is not None and len(self.jacobians) != self.m:
            raise ValidationError("jacobians list must match the fields list")
        if self.domain is None:
            object.__setattr__(self, "domain", unbounded_box(self.n))
        if self.domain.dim != self.n:
            raise ValidationError("domain dimension must equal the state dimension")

    def require_in_domain(self, x: np.ndarray, what: str = "point") -> None:
        if not self.domain.contains(x):
            raise DomainError(f"{what} {np.asarray(x).tolist()} lies outside the system domain")

    def field_value(self, i: int, x: np.ndarray) -> np.ndarray:
        """Value of field i (1-based) at x."""
        return np.asarray(self.fields[i - 1](np.asarray(x, dtype=float)), dtype=float)

    def field_jacobian(self, i: int, x: np.ndarray) -> np.ndarray:
        """Jacobian of field i (1-based); analytic when available, else central differences."""
        x = np.asarray(x, dtype=float)
        if self.jacobians is not None:
            return np.asarray(self.jacobians[i - 1](x), dtype=float)
        return fd_jacobian(self.fields[i - 1], x)


@dataclass(frozen=True)
class BracketSelection:
    """Index sets defining the frame: fields in s1, bracket pairs in s2.

    ``kappa`` assigns a distinct natural frequency label to every pair in
    s2; it defaults to 1, 2, ... in declaration order.
    """

    s1: tuple
    s2: tuple = ()
    kappa: tuple = None  # type: ignore[assignment]

    def __post_init__(self):
        s1 = tuple(int(i) for i in self.s1)
        s2 = tuple((int(a), int(b)) for a, b in self.s2)
        object.__setattr__(self, "s1", s1)
        object.__setattr__(self, "s2", s2)
        if self.kappa is None:
            object.__setattr__(self, "kappa", tuple(range(1, len(s2) + 1)))
        else:
            object.__setattr__(self, "kappa", tuple(int(k) for k in self.kappa))
        if len(self.kappa) != len(s2):
            raise ValidationError("kappa must assign one frequency per bracket pair")
        if any(k < 1 for k in self.kappa):
            raise ValidationError("kappa values must be naturals >= 1")
        if len(set(self.kappa)) != len(self.kappa):
            raise ValidationError("kappa values must be pairwise distinct")

    @property
    def size(self) -> int:
        return len(self.s1) + len(self.s2)

    def validate_for(self, sys: ControlSystem) -> None:
        if self.size != sys.n:
            raise ValidationError(f"|s1|+|s2| must equal n={sys.n}, got {self.size}")
        idx = set(self.s1) | {i for p in self.s2 for i in p}
        if not idx.issubset(range(1, sys.m + 1)):
            raise ValidationError("selection refers to field indices outside 1..m")


def lie_bracket(sys: ControlSystem, i: int, j: int, x: np.ndarray) -> np.ndarray:
    """Lie bracket [f_i, f_j](x) = (df_j/dx) f_i - (df_i/dx) f_j."""
    if not (1 <= i <= sys.m and 1 <= j <= sys.m):
        raise ValidationError(f"field indices must lie in 1..{sys.m}")
    sys.require_in_domain(x)
    if i == j:
        return np.zeros(sys.n)
    fi = sys.field_value(i, x)
    fj = sys.field_value(j, x)
    return sys.field_jacobian(j, x) @ fi - sys.field_jacobian(i, x) @ fj


def frame_matrix(
    sys: ControlSystem,
    sel: BracketSelection,
    x: np.ndarray,
    cond_tol: float = DEFAULT_COND_TOL,
) -> np.ndarray:
    """n x n matrix with columns f_{j1} (j1 in s1) then [f_{j1}, f_{j2}] ((j1,j2) in s2)."""
    sel.validate_for(sys)
    sys.require_in_domain(x)
    cols = [sys.field_value(i, x) for i in sel.s1]
    cols += [lie_bracket(sys, a, b, x) for a, b in sel.s2]
    F = np.column_stack(cols)
    if np.linalg.cond(F) > cond_tol:
        raise RankDeficiencyError(
            f"frame matrix is rank deficient at x={np.asarray(x).tolist()} "
            f"(condition number exceeds {cond_tol:g})"
        )
    return F


@dataclass(frozen=True)
class FrameMatrix:
    """Frame evaluator bundled with a uniform bound on the inverse norm."""

    sys: ControlSystem
    sel: BracketSelection
    alpha: float = np.inf
    cond_tol: float = DEFAULT_COND_TOL

    def at(self, x: np.ndarray) -> np.ndarray:
        return frame_matrix(self.sys, self.sel, x, self.cond_tol)


@dataclass(frozen=True)
class RankReport:
    ok: bool
    worst_cond: float
    witnesses: list = field(default_factory=list)


def check_rank_condition(
    sys: ControlSystem,
    sel: BracketSelection,
    grid: np.ndarray,
    cond_tol: float = DEFAULT_COND_TOL,
) -> RankReport:
    """Check the bracket-generating condition on a sample grid.

    ok iff every grid point's frame has condition number <= cond_tol; the
    report lists the failing points.
    """
    grid = np.atleast_2d(np.asarray(grid, dtype=float))
    if grid.shape[0] == 0:
        raise ValidationError("rank check needs a nonempty grid")
    sel.validate_for(sys)
    worst = 0.0
    witnesses = []
    for x in grid:
        sys.require_in_domain(x)
        cols = [sys.field_value(i, x) for i in sel.s1]
        cols += [lie_bracket(sys, a, b, x) for a, b in sel.s2]
        c = float(np.linalg.cond(np.column_stack(cols)))
        worst = max(worst, c)
        if not (c <= cond_tol):
            witnesses.append(x.copy())
    return RankReport(ok=not witnesses, worst_cond=worst, witnesses=witnesses)


def estimate_alpha(
    sys: ControlSystem,
    sel: BracketSelection,
    compact: Box,
    samples: int,
    seed: int = 0,
    safety: float = 1.1,
) -> float:
    """Sampled upper bound on ||F^{-1}(x)|| over a compact box.

    The sampled maximum of the spectral norm is inflated by a safety
    factor because sampling undercovers the set.
    """
    if samples < 1:
        raise ValidationError("need at least one sample")
    pts = compact.sample(samples, seed=seed)
    worst = 0.0
    for x in pts:
        F = frame_matrix(sys, sel, x)
        worst = max(worst, float(np.linalg.norm(np.linalg.inv(F), 2)))
    return safety * worst


# --- presets ---------------------------------------------------------------

_REGISTRY: dict = {}


def register_system(name: str, factory: Callable[[], ControlSystem]) -> None:
    _REGISTRY[name] = factory


def get_system(name: str) -> ControlSystem:
    try:
        return _REGISTRY[name]()
    except KeyError:
        raise ValidationError(
            f"unknown system {name!r}; known: {sorted(_REGISTRY)}"
        ) from None


def brockett() -> ControlSystem:
    """The Brockett integrator: f1 = (1, 0, x2), f2 = (0, 1, -x1) on R^3."""
    f1 = lambda x: np.array([1.0, 0.0, x[1]])
    f2 = lambda x: np.array([0.0, 1.0, -x[0]])
    j1 = lambda x: np.array([[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    j2 = lambda x: np.array([[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [-1.0, 0.0, 0.0]])
    return ControlSystem(n=3, m=2, fields=(f1, f2), jacobians=(j1, j2), name="brockett")


def brockett_selection(kappa: int = 1) -> BracketSelection:
    return BracketSelection(s1=(1, 2), s2=((1, 2),), kappa=(kappa,))


register_system("brockett", brockett)
