"""Model-free extremum-seeking layer.

Generating pairs (g_j, g_{j+n}) = (r sin(phi), r cos(phi)) with
r^2 phi' == gamma2 turn zero-mean dithers into an averaged gradient
descent with gain gamma2.  The dithers are sinusoids with amplitude
sqrt(4*pi*k/mu) at frequency k/mu, optionally slowed by eta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, ValidationError

ScalarFn = Callable[[float], float]


@dataclass(frozen=True)
class GeneratingPair:
    """Pair parameterization (r, phi) with identity r^2 phi' == gamma2.

    ``zero_at`` marks a point where both components vanish by continuity
    (used by pairs whose oscillation phase is singular there).  ``lo``/
    ``hi`` bound the validity range; ``check_lo``/``check_hi`` give the
    window used for derivative-based numeric checks.  ``g1_fn``/``g2_fn``
    optionally give closed forms that bypass r*sin(phi) round-off.
    """

    r: ScalarFn
    phi: ScalarFn
    gamma2: float
    zero_at: Optional[float] = None
    dphi: Optional[ScalarFn] = None
    lo: float = -math.inf
    hi: float = math.inf
    check_lo: float = -10.0
    check_hi: float = 10.0
    name: str = "custom"
    g1_fn: Optional[ScalarFn] = None
    g2_fn: Optional[ScalarFn] = None

    def __post_init__(self):
        if self.gamma2 < 0:
            raise ValidationError("gamma2 must be nonnegative")

    def _check_domain(self, z: float) -> None:
        if self.zero_at is not None and z == self.zero_at:
            return
        if not (self.lo < z < self.hi) and not (z == self.lo == self.zero_at):
            raise DomainError(
                f"cost value {z!r} outside the validity range "
                f"({self.lo:g}, {self.hi:g}) of pair {self.name!r}"
            )

    def values(self, z: float) -> tuple:
        """(g_j(z), g_{j+n}(z)); exactly (0, 0) at zero_at."""
        z = float(z)
        if self.zero_at is not None and z == self.zero_at:
            return 0.0, 0.0
        self._check_domain(z)
        if self.g1_fn is not None:
            return self.g1_fn(z), self.g2_fn(z)
        rv = self.r(z)
        p = self.phi(z)
        return rv * math.sin(p), rv * math.cos(p)

    def g1(self, z: float) -> float:
        return self.values(z)[0]

    def g2(self, z: float) -> float:
        return self.values(z)[1]

    def check_grid(self, points: int = 200) -> np.ndarray:
        """Log-spaced grid over the numeric check window."""
        if self.check_lo > 0:
            return np.logspace(math.log10(self.check_lo), math.log10(self.check_hi), points)
        half = points // 2
        pos = np.logspace(-3, math.log10(self.check_hi), half)
        return np.concatenate([-pos[::-1], pos])

    def identity_residual(self, z: float) -> float:
        """r(z)^2 phi'(z) - gamma2 (analytic phi' when available)."""
        z = float(z)
        self._check_domain(z)
        if self.dphi is not None:
            dp = self.dphi(z)
        else:
            h = 1e-6 * (1.0 + abs(z))
            dp = (self.phi(z + h) - self.phi(z - h)) / (2.0 * h)
        return self.r(z) ** 2 * dp - self.gamma2


def bracket_gain(pair: GeneratingPair, z: float, h: Optional[float] = None) -> float:
    """g_{j+n}'(z) g_j(z) - g_j'(z) g_{j+n}(z) by central differences.

    For a valid pair this equals -gamma2 independently of z; the finite
    difference keeps this an oracle independent of the (r, phi) identity.
    """
    z = float(z)
    h = 1e-7 * (1.0 + abs(z)) if h is None else h
    if not (pair.lo < z - h and z + h < pair.hi):
        raise DomainError(f"z={z!r} too close to the validity boundary for differentiation")
    g1p, g2p = pair.values(z + h)
    g1m, g2m = pair.values(z - h)
    g1, g2 = pair.values(z)
    d1 = (g1p - g1m) / (2.0 * h)
    d2 = (g2p - g2m) / (2.0 * h)
    return d2 * g1 - d1 * g2


def pair_library(name: str, gamma2: float = 1.0) -> GeneratingPair:
    """Built-in generating pairs addressable by stable names.

    linear            g = (z, 1)                    valid on R
    bounded           g = (sin z, cos z)            valid on R
    sqrt_log          r = sqrt(z),  phi = ln z      valid on z > 0
    gze18             r = sqrt((1-e^-z)/(1+e^z)), phi = e^z + 2 ln(e^z - 1)
    tanh_vanishing    r = sqrt(tanh(z/2)), phi = 2 ln(e^z - 1) - z

    The last two vanish at z = 0 and are defined for z >= 0.  A pair
    scaled to gamma2 multiplies r by sqrt(gamma2), preserving phi and
    hence the identity r^2 phi' == gamma2.
    """
    if not gamma2 > 0:
        raise ValidationError("gamma2 must be positive for library pairs")
    s = math.sqrt(gamma2)
    if name == "linear":
        return GeneratingPair(
            r=lambda z: s * math.hypot(z, 1.0),
            phi=math.atan,
            dphi=lambda z: 1.0 / (1.0 + z * z),
            gamma2=gamma2,
            name=name,
            g1_fn=lambda z: s * z,
            g2_fn=lambda z: s,
        )
    if name == "bounded":
        return GeneratingPair(
            r=lambda z: s,
            phi=lambda z: z,
            dphi=lambda z: 1.0,
            gamma2=gamma2,
            name=name,
        )
    if name == "sqrt_log":
        return GeneratingPair(
            r=lambda z: s * math.sqrt(z),
            phi=math.log,
            dphi=lambda z: 1.0 / z,
            gamma2=gamma2,
            lo=0.0,
            hi=math.inf,
            check_lo=1e-3,
            check_hi=10.0,
            name=name,
        )
    if name == "gze18":
        return GeneratingPair(
            r=lambda z: s * math.sqrt(-math.expm1(-z) / (1.0 + math.exp(z))),
            phi=lambda z: math.exp(z) + 2.0 * math.log(math.expm1(z)),
            dphi=lambda z: math.exp(z) * (math.exp(z) + 1.0) / math.expm1(z),
            gamma2=gamma2,
            zero_at=0.0,
            lo=0.0,
            hi=math.inf,
            check_lo=1e-3,
            check_hi=4.0,
            name=name,
        )
    if name == "tanh_vanishing":
        return GeneratingPair(
            r=lambda z: s * math.sqrt(math.tanh(0.5 * z)),
            phi=lambda z: 2.0 * math.log(math.expm1(z)) - z,
            dphi=lambda z: (math.exp(z) + 1.0) / math.expm1(z),
            gamma2=gamma2,
            zero_at=0.0,
            lo=0.0,
            hi=math.inf,
            check_lo=1e-3,
            check_hi=10.0,
            name=name,
        )
    raise ValidationError(
        f"unknown generating pair {name!r}; known: "
        "linear, bounded, sqrt_log, gze18, tanh_vanishing"
    )


PAIR_NAMES = ("linear", "bounded", "sqrt_log", "gze18", "tanh_vanishing")


@dataclass(frozen=True)
class DitherSchedule:
    """Dither frequencies k_j, period mu, and slowing factor eta (1 = none)."""

    k: tuple
    mu: float
    eta: float = 1.0

    def __post_init__(self):
        k = tuple(int(v) for v in self.k)
        object.__setattr__(self, "k", k)
        if len(set(k)) != len(k):
            raise ValidationError("dither frequencies k_j must be pairwise distinct")
        if any(v < 1 for v in k):
            raise ValidationError("dither frequencies must be naturals >= 1")
        if not self.mu > 0:
            raise ValidationError("mu must be positive")
        if not self.eta >= 1.0:
            raise ValidationError("eta must be >= 1")

    @property
    def n(self) -> int:
        return len(self.k)


def default_schedule(n: int, mu: float, eta: float = 1.0) -> DitherSchedule:
    return DitherSchedule(k=tuple(range(1, n + 1)), mu=mu, eta=eta)


def dither(sched: DitherSchedule, j: int, t: float) -> float:
    """Dither v_j(t): cos-type for j <= n, sin-type for n < j <= 2n.

    With eta > 1 the slowed form (1/eta) v_j(t/eta) is returned.
    """
    n = sched.n
    if not 1 <= j <= 2 * n:
        raise ValidationError(f"dither index must lie in 1..{2 * n}")
    k = sched.k[(j - 1) % n]
    amp = math.sqrt(4.0 * math.pi * k / sched.mu) / sched.eta
    arg = 2.0 * math.pi * k * (t / sched.eta) / sched.mu
    return amp * math.cos(arg) if j <= n else amp * math.sin(arg)


def seeker_rhs(pair: GeneratingPair, sched: DitherSchedule, y: float, t: float) -> np.ndarray:
    """Right-hand side of the seeking subsystem at cost value y.

    Coordinate j collects g_j(y) v_j(t) + g_{j+n}(y) v_{j+n}(t); the unit
    vectors e_j and e_{j+n} both act on coordinate j.
    """
    n = sched.n
    g1v, g2v = pair.values(y)
    out = np.empty(n)
    for j in range(1, n + 1):
        out[j - 1] = g1v * dither(sched, j, t) + g2v * dither(sched, j + n, t)
    return out
