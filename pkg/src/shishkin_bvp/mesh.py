"""Piecewise-uniform Shishkin meshes condensing at x = 0, plus a uniform baseline."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError

SHISHKIN = "shishkin"
UNIFORM = "uniform"


@dataclass(frozen=True, eq=False)
class PiecewiseUniformMesh:
    """Mesh points ``x_0 = 0 < ... < x_N = 1``.

    For a Shishkin mesh ``[0, tau1]`` and ``[tau1, tau2]`` carry N/4 elements
    each with steps ``h1`` and ``h2``; ``[tau2, 1]`` carries N/2 elements of
    step ``h3``.
    """

    points: np.ndarray
    n_elements: int
    tau1: float
    tau2: float
    h1: float
    h2: float
    h3: float
    kind: str = SHISHKIN

    def __post_init__(self):
        self.points.setflags(write=False)

    def __len__(self):
        return len(self.points)

    @property
    def steps(self) -> np.ndarray:
        """Element lengths ``h_j = x_j - x_{j-1}`` for j = 1..N (index 0 holds h_1)."""
        return np.diff(self.points)

    def region(self, j: int) -> int:
        """Region (1, 2 or 3) of the element ending at node j; node 0 belongs to region 1."""
        q = self.n_elements // 4
        if j <= q:
            return 1
        if j <= 2 * q:
            return 2
        return 3

    def bisect(self) -> "PiecewiseUniformMesh":
        """The 2N mesh obtained by halving every element (transition points kept)."""
        fine = np.empty(2 * self.n_elements + 1)
        fine[::2] = self.points
        fine[1::2] = 0.5 * (self.points[:-1] + self.points[1:])
        return PiecewiseUniformMesh(fine, 2 * self.n_elements, self.tau1, self.tau2,
                                    self.h1 / 2, self.h2 / 2, self.h3 / 2, self.kind)


def _check_eps(eps1, eps2, alpha, N):
    if not (eps1 > 0 and eps2 > 0 and alpha > 0):
        raise ArgumentError(f"eps1, eps2, alpha must be positive (got {eps1}, {eps2}, {alpha})")
    if eps1 > eps2:
        raise ArgumentError(f"eps1={eps1} must not exceed eps2={eps2}")
    if N < 4:
        raise ArgumentError(f"N must be at least 4, got {N}")


def transition_parameters(eps1: float, eps2: float, alpha: float, N: int) -> tuple[float, float]:
    """tau2 = min(1/2, 2 eps2 ln N / alpha),  tau1 = min(tau2/2, 2 eps1 ln N / alpha)."""
    _check_eps(eps1, eps2, alpha, N)
    log_n = math.log(N)
    tau2 = min(0.5, 2.0 * eps2 / alpha * log_n)
    tau1 = min(tau2 / 2.0, 2.0 * eps1 / alpha * log_n)
    return tau1, tau2


def shishkin_points(tau1: float, tau2: float, N: int) -> np.ndarray:
    q = N // 4
    h1 = 4.0 * tau1 / N
    h2 = 4.0 * (tau2 - tau1) / N
    h3 = 2.0 * (1.0 - tau2) / N
    j = np.arange(N + 1, dtype=float)
    x = np.empty(N + 1)
    x[:q] = j[:q] * h1
    x[q:2 * q] = tau1 + (j[q:2 * q] - q) * h2
    x[2 * q:] = tau2 + (j[2 * q:] - 2 * q) * h3
    # pin transition and end nodes instead of trusting accumulated products
    x[q] = tau1
    x[2 * q] = tau2
    x[N] = 1.0
    return x


def build_shishkin_mesh(eps1: float, eps2: float, alpha: float, N: int,
                        taus: tuple[float, float] | None = None) -> PiecewiseUniformMesh:
    """Shishkin mesh with N elements.

    ``taus`` overrides the transition points (used to build nested meshes
    sharing the coarse mesh's tau1, tau2).
    """
    if N % 4 != 0 or N < 4:
        raise ArgumentError(f"N must be a positive multiple of 4, got {N}")
    tau1, tau2 = transition_parameters(eps1, eps2, alpha, N) if taus is None else taus
    if not (0 < tau1 <= tau2 / 2 and tau2 < 1):
        raise ArgumentError(f"invalid transition points {tau1}, {tau2}")
    points = shishkin_points(tau1, tau2, N)
    return PiecewiseUniformMesh(points, N, tau1, tau2,
                                4.0 * tau1 / N, 4.0 * (tau2 - tau1) / N, 2.0 * (1.0 - tau2) / N,
                                SHISHKIN)


def build_uniform_mesh(N: int) -> PiecewiseUniformMesh:
    if N < 2:
        raise ArgumentError(f"N must be at least 2, got {N}")
    points = np.arange(N + 1) / N
    h = 1.0 / N
    return PiecewiseUniformMesh(points, N, 0.25, 0.5, h, h, h, UNIFORM)


def mesh_steps(mesh: PiecewiseUniformMesh, j: int) -> tuple[float, float, float]:
    """``(h_j, h_{j+1}, (h_j + h_{j+1}) / 2)`` at interior node j."""
    if not 1 <= j <= mesh.n_elements - 1:
        raise IndexError(f"node {j} is not interior (N={mesh.n_elements})")
    x = mesh.points
    h_j = x[j] - x[j - 1]
    h_next = x[j + 1] - x[j]
    return float(h_j), float(h_next), float((h_j + h_next) / 2)
