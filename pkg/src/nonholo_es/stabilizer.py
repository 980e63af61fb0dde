"""Model-based fast-oscillating stabilizer.

The control drives x toward a reference xi by combining held coefficients
a = -gamma1 * F(x)^{-1} (x - xi) with sinusoids at distinct frequencies
kappa/eps.  Coefficients are frozen on each sampling interval while the
sinusoids use continuous time, which is what makes the scheme a
sample-and-hold feedback.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .systems import BracketSelection, FrameMatrix


@dataclass(frozen=True)
class StabilizerGains:
    """Control gain and sampling period.

    The constructive bounds require eps * gamma1 < 1; values violating it
    are accepted (they are common in practice) with a warning.
    """

    gamma1: float
    epsilon: float

    def __post_init__(self):
        if not self.gamma1 > 0:
            raise ValidationError("gamma1 must be positive")
        if not self.epsilon > 0:
            raise ValidationError("epsilon must be positive")
        if self.epsilon * self.gamma1 >= 1.0:
            warnings.warn(
                f"eps*gamma1 = {self.epsilon * self.gamma1:.3g} >= 1 violates the "
                "hypothesis of the convergence guarantee (simulation still runs)",
                stacklevel=2,
            )


@dataclass(frozen=True)
class CoefficientVector:
    """Coefficients split into the s1 (direct) and s2 (oscillatory) blocks."""

    a_s1: np.ndarray
    a_s2: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a_s1", np.asarray(self.a_s1, dtype=float))
        object.__setattr__(self, "a_s2", np.asarray(self.a_s2, dtype=float))
        if not (np.all(np.isfinite(self.a_s1)) and np.all(np.isfinite(self.a_s2))):
            raise ValidationError("coefficients must be finite")

    @property
    def full(self) -> np.ndarray:
        return np.concatenate([self.a_s1, self.a_s2])


def coefficients(
    frame: FrameMatrix,
    gains: StabilizerGains,
    x: np.ndarray,
    xi: np.ndarray,
) -> CoefficientVector:
    """a(x, xi) = -gamma1 * F(x)^{-1} (x - xi), in frame column order."""
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    a = -gains.gamma1 * np.linalg.solve(frame.at(x), x - xi)
    k = len(frame.sel.s1)
    return CoefficientVector(a_s1=a[:k], a_s2=a[k:])


def control_value(
    sel: BracketSelection,
    gains: StabilizerGains,
    coeffs: CoefficientVector,
    t: float,
) -> np.ndarray:
    """Evaluate the m-vector control at time t for held coefficients.

    Input i receives the direct coefficients for indices in s1 plus, for
    every pair (i1, i2) in s2, an amplitude sqrt(4*pi/eps) *
    sqrt(kappa*|a|) carried by cos on channel i1 (signed by a) and sin on
    channel i2, both at frequency kappa/eps.  sign(0) is taken as 0.
    """
    m = max(max(sel.s1, default=0), max((i for p in sel.s2 for i in p), default=0))
    u = np.zeros(m)
    for a, i1 in zip(coeffs.a_s1, sel.s1):
        u[i1 - 1] += a
    amp0 = math.sqrt(4.0 * math.pi / gains.epsilon)
    for a, (i1, i2), kap in zip(coeffs.a_s2, sel.s2, sel.kappa):
        amp = amp0 * math.sqrt(kap * abs(a))
        phase = 2.0 * math.pi * kap * t / gains.epsilon
        u[i1 - 1] += amp * np.sign(a) * math.cos(phase)
        u[i2 - 1] += amp * math.sin(phase)
    return u


def hold_schedule(gains: StabilizerGains, horizon: float) -> np.ndarray:
    """Sampling instants t_j = eps*j for 0 <= t_j <= horizon."""
    if not horizon > 0:
        raise ValidationError("horizon must be positive")
    count = int(math.floor(horizon / gains.epsilon + 1e-9))
    return gains.epsilon * np.arange(count + 1)
