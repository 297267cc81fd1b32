"""Outer (eps = 0) solution: A u0' - B u0 = f with u0(1) = r, integrated from x = 1 to 0."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, NumericalFailure
from .problem import TwoParamBVP


@dataclass(frozen=True, eq=False)
class ReducedSolution:
    grid: np.ndarray
    values: np.ndarray


def _rhs(bvp: TwoParamBVP):
    def deriv(x: float, u: np.ndarray) -> np.ndarray:
        c = bvp.coefficients(np.array([x]))
        a1, a2 = c["a1"][0], c["a2"][0]
        bu1 = c["b11"][0] * u[0] - c["b12"][0] * u[1]
        bu2 = -c["b21"][0] * u[0] + c["b22"][0] * u[1]
        return np.array([(bu1 + c["f1"][0]) / a1, (bu2 + c["f2"][0]) / a2])

    return deriv


def solve_reduced(bvp: TwoParamBVP, M: int = 1024) -> ReducedSolution:
    """Classical fourth-order Runge-Kutta with step -1/M, values stored at every grid node."""
    if M < 16:
        raise ArgumentError(f"M must be at least 16, got {M}")
    grid = np.arange(M + 1) / M
    values = np.empty((M + 1, 2))
    f = _rhs(bvp)
    h = -1.0 / M
    u = np.array(bvp.right_bc, dtype=float)
    values[M] = u
    for k in range(M, 0, -1):
        x = grid[k]
        k1 = f(x, u)
        k2 = f(x + h / 2, u + h / 2 * k1)
        k3 = f(x + h / 2, u + h / 2 * k2)
        k4 = f(x + h, u + h * k3)
        u = u + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(u)):
            raise NumericalFailure(f"reduced solution became non-finite near x={grid[k - 1]:g}")
        values[k - 1] = u
    return ReducedSolution(grid, values)


def eval_reduced(rsol: ReducedSolution, x) -> np.ndarray:
    """Piecewise-linear interpolation; scalar x gives shape (2,), array x gives (len(x), 2)."""
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 0.0) or np.any(xs > 1.0) or not np.all(np.isfinite(xs)):
        raise ArgumentError("reduced solution is only defined on [0, 1]")
    out = np.stack([np.interp(xs, rsol.grid, rsol.values[:, i]) for i in range(2)], axis=-1)
    return out
