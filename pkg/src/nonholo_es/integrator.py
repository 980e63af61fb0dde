"""Closed-loop sample-and-hold simulation.

Produces trajectories of the two-layer loop: the plant x is driven by the
stabilizer whose coefficients are frozen at instants t_j = eps*j, while
the reference xi evolves continuously under the dithered seeker using the
measured cost y = J(x).  A fixed RK4 step that divides eps exactly makes
every hold boundary a step boundary, so no event detection is needed and
the right-hand side is smooth inside each step.

Two interchangeable inner loops exist: a compiled kernel for the built-in
Brockett/sphere-cost/library-pair combination and a generic pure-Python
loop.  The fastest available one is selected per call.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import _pyloop
from .costs import SphereCost
from .errors import DomainError, NumericalBlowupError, NumericalError, ValidationError
from .seeker import PAIR_NAMES, DitherSchedule, GeneratingPair
from .stabilizer import CoefficientVector, StabilizerGains, coefficients
from .systems import BracketSelection, ControlSystem, FrameMatrix

try:
    from . import _fastloop

    HAVE_FASTLOOP = True
except ImportError:  # extension not built; pure-Python loop takes over
    _fastloop = None
    HAVE_FASTLOOP = False

_PAIR_KIND = {name: i for i, name in enumerate(PAIR_NAMES)}


@dataclass
class SimConfig:
    """Everything a run needs besides the plant and the cost."""

    gains: StabilizerGains
    sched: DitherSchedule
    pair: GeneratingPair
    sel: BracketSelection
    x0: np.ndarray
    xi0: np.ndarray
    horizon: float
    substeps_per_period: int = 32
    record_stride: int = 0  # 0 = auto: hold boundaries plus 8 interior points
    pin_x: bool = False
    y_shift: float = 0.0
    warn_on_hypothesis: bool = True
    eps_requested: float = field(init=False)

    def __post_init__(self):
        self.x0 = np.asarray(self.x0, dtype=float)
        self.xi0 = np.asarray(self.xi0, dtype=float)
        if not self.horizon > 0:
            raise ValidationError("horizon must be positive")
        if self.substeps_per_period < 1:
            raise ValidationError("substeps_per_period must be >= 1")
        if self.record_stride < 0:
            raise ValidationError("record_stride must be >= 0")
        eps, mu = self.gains.epsilon, self.sched.mu
        self.eps_requested = eps
        if not eps < mu:
            raise ValidationError(f"eps < mu is required, got eps={eps:g}, mu={mu:g}")
        # mu/eps must be a natural number; adjust eps down to the exact divisor.
        ratio = mu / eps
        if abs(ratio - round(ratio)) <= 1e-9 * max(1.0, ratio):
            n_ratio = max(2, int(round(ratio)))
        else:
            n_ratio = max(2, int(math.ceil(ratio)))
        eps_exact = mu / n_ratio
        if eps_exact != eps:
            self.gains = StabilizerGains(self.gains.gamma1, eps_exact)
        if self.warn_on_hypothesis and not np.array_equal(self.x0, self.xi0):
            warnings.warn(
                "x(0) != xi(0) violates the convergence theorem's hypothesis "
                "(the scheme still applies; set warn_on_hypothesis=False to silence)",
                stacklevel=2,
            )

    @property
    def mu_over_eps(self) -> int:
        return int(round(self.sched.mu / self.gains.epsilon))

    def steps_per_eps(self) -> int:
        """Integration steps per hold interval, resolving the fastest oscillation."""
        eps = self.gains.epsilon
        kappa_max = max(self.sel.kappa, default=0)
        need = 1
        if kappa_max:
            need = max(need, self.substeps_per_period * kappa_max)
        k_max = max(self.sched.k)
        dither_period = self.sched.eta * self.sched.mu / k_max
        need = max(need, int(math.ceil(self.substeps_per_period * eps / dither_period)))
        return need


@dataclass
class PiEpsTrajectory:
    """Sampled record of one sample-and-hold solution."""

    times: np.ndarray
    x: np.ndarray
    xi: np.ndarray
    y: np.ndarray
    u: np.ndarray
    meta: dict

    def __post_init__(self):
        n = self.times.size
        if not (self.x.shape[0] == self.xi.shape[0] == self.y.size == self.u.shape[0] == n):
            raise ValidationError("trajectory arrays must share their leading length")
        if n == 0:
            raise ValidationError("trajectory is empty")
        if self.times[0] != 0.0 or np.any(np.diff(self.times) <= 0):
            raise ValidationError("times must be strictly increasing from 0")

    @property
    def domain_exit(self) -> bool:
        return bool(self.meta.get("domain_exit", False))

    def distances(self, x_star: np.ndarray) -> np.ndarray:
        return np.linalg.norm(self.x - np.asarray(x_star, dtype=float), axis=1)


def _fast_path_ok(sys: ControlSystem, cost, cfg: SimConfig) -> bool:
    return (
        HAVE_FASTLOOP
        and sys.name == "brockett"
        and sys.n == 3
        and cfg.sel.s1 == (1, 2)
        and cfg.sel.s2 == ((1, 2),)
        and isinstance(cost, SphereCost)
        and cfg.pair.name in _PAIR_KIND
        and cfg.sched.n == 3
    )


def simulate(
    sys: ControlSystem,
    cost: Callable[[np.ndarray], float],
    cfg: SimConfig,
    force_python: bool = False,
) -> PiEpsTrajectory:
    """Integrate the closed loop over [0, horizon] and sample the result.

    Domain exit truncates the trajectory and sets the ``domain_exit`` /
    ``exit_time`` meta fields; a non-finite state raises
    NumericalBlowupError.
    """
    cfg.sel.validate_for(sys)
    if len(cfg.sched.k) != sys.n:
        raise ValidationError("dither schedule must provide one frequency per state coordinate")
    sys.require_in_domain(cfg.x0, "x0")
    sys.require_in_domain(cfg.xi0, "xi0")

    spe = cfg.steps_per_eps()
    h = cfg.gains.epsilon / spe
    n_steps = int(math.floor(cfg.horizon / h + 1e-9))
    if n_steps < 1:
        raise ValidationError("horizon shorter than one integration step")
    stride = cfg.record_stride if cfg.record_stride > 0 else max(1, spe // 9)

    use_fast = _fast_path_ok(sys, cost, cfg) and not force_python
    if use_fast:
        out = _fastloop.run_brockett(
            cfg.gains.gamma1,
            cfg.gains.epsilon,
            float(cfg.sel.kappa[0]),
            np.asarray(cfg.sched.k, dtype=float),
            cfg.sched.mu,
            cfg.sched.eta,
            _PAIR_KIND[cfg.pair.name],
            math.sqrt(cfg.pair.gamma2),
            cfg.y_shift,
            cost.center,
            cost.scale,
            cost.offset,
            cfg.x0,
            cfg.xi0,
            n_steps,
            spe,
            stride,
            sys.domain.lower,
            sys.domain.upper,
            cfg.pin_x,
            h,
        )
        backend = "compiled"
    else:
        out = _pyloop.run_generic(sys, cost, cfg, n_steps, spe, stride, h)
        backend = "python"

    times, xs, xis, ys, us, status, exit_time = out
    if status == _pyloop.STATUS_BLOWUP:
        raise NumericalBlowupError(exit_time)
    if status == _pyloop.STATUS_PAIR_DOMAIN:
        raise DomainError(
            f"cost value left the validity range of pair {cfg.pair.name!r} "
            f"near t={exit_time:.6g}"
        )

    meta = {
        "backend": backend,
        "h": h,
        "steps_per_eps": spe,
        "record_stride": stride,
        "eps": cfg.gains.epsilon,
        "eps_requested": cfg.eps_requested,
        "mu": cfg.sched.mu,
        "mu_over_eps": cfg.mu_over_eps,
        "eta": cfg.sched.eta,
        "gamma1": cfg.gains.gamma1,
        "gamma2": cfg.pair.gamma2,
        "pair": cfg.pair.name,
        "kappa": list(cfg.sel.kappa),
        "k": list(cfg.sched.k),
        "horizon": cfg.horizon,
        "pinned": cfg.pin_x,
        "y_shift": cfg.y_shift,
        "domain_exit": status == _pyloop.STATUS_DOMAIN_EXIT,
        "exit_time": exit_time if status == _pyloop.STATUS_DOMAIN_EXIT else None,
    }
    return PiEpsTrajectory(times=times, x=xs, xi=xis, y=ys, u=us, meta=meta)


def hold_boundary_refresh(
    sys: ControlSystem,
    sel: BracketSelection,
    gains: StabilizerGains,
    x: np.ndarray,
    xi: np.ndarray,
) -> CoefficientVector:
    """Coefficients frozen at a hold boundary from the current (x, xi)."""
    return coefficients(FrameMatrix(sys, sel), gains, x, xi)


def reference_integrate(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    x0: np.ndarray,
    t0: float,
    t1: float,
    tol: float = 1e-10,
    max_step: Optional[float] = None,
) -> np.ndarray:
    """High-accuracy adaptive endpoint, used as an oracle in tests/analysis."""
    from scipy.integrate import solve_ivp

    if not t1 > t0:
        raise ValidationError("need t1 > t0")
    kwargs = {} if max_step is None else {"max_step": max_step}
    sol = solve_ivp(
        rhs, (t0, t1), np.asarray(x0, dtype=float), method="DOP853",
        rtol=tol, atol=tol, dense_output=False, **kwargs,
    )
    if not sol.success:
        raise NumericalError(f"reference integration failed: {sol.message}")
    return sol.y[:, -1]
