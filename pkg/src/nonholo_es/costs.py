"""Cost functions and derivative helpers.

Any callable x -> float works as a cost; SphereCost additionally carries
analytic derivatives, its minimizer, and the metadata the compiled
integration kernel needs to recognize it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError


@dataclass(frozen=True)
class SphereCost:
    """J(x) = scale * ||x - center||^2 + offset."""

    center: np.ndarray
    scale: float = 1.0
    offset: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        if not self.scale > 0:
            raise ValidationError("scale must be positive")

    def __call__(self, x: np.ndarray) -> float:
        d = np.asarray(x, dtype=float) - self.center
        return self.scale * float(d @ d) + self.offset

    def gradient(self, x: np.ndarray) -> np.ndarray:
        return 2.0 * self.scale * (np.asarray(x, dtype=float) - self.center)

    def hessian(self, x: np.ndarray) -> np.ndarray:
        return 2.0 * self.scale * np.eye(self.center.size)

    @property
    def minimizer(self) -> np.ndarray:
        return self.center

    @property
    def min_value(self) -> float:
        return self.offset


def fd_gradient(cost, x: np.ndarray, h: float = None) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    h = 1e-6 * (1.0 + float(np.linalg.norm(x))) if h is None else h
    g = np.empty_like(x)
    for k in range(x.size):
        e = np.zeros_like(x)
        e[k] = h
        g[k] = (cost(x + e) - cost(x - e)) / (2.0 * h)
    return g


def fd_hessian(cost, x: np.ndarray, h: float = None) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    h = 1e-4 * (1.0 + float(np.linalg.norm(x))) if h is None else h
    n = x.size
    H = np.empty((n, n))
    f0 = cost(x)
    for i in range(n):
        ei = np.zeros(n)
        ei[i] = h
        H[i, i] = (cost(x + ei) - 2.0 * f0 + cost(x - ei)) / h**2
        for j in range(i + 1, n):
            ej = np.zeros(n)
            ej[j] = h
            H[i, j] = (
                cost(x + ei + ej) - cost(x + ei - ej) - cost(x - ei + ej) + cost(x - ei - ej)
            ) / (4.0 * h**2)
            H[j, i] = H[i, j]
    return H


def cost_gradient_fn(cost, gradient=None):
    """Pick the gradient evaluator: explicit > attribute > central differences."""
    if gradient is not None:
        return gradient
    if hasattr(cost, "gradient"):
        return cost.gradient
    return lambda x: fd_gradient(cost, x)
