"""Solve pipeline, two-mesh error estimates and parameter-uniform convergence tables."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .discretize import assemble
from .errors import ArgumentError
from .linsolve import solve_block_tridiagonal
from .mesh import SHISHKIN, UNIFORM, PiecewiseUniformMesh, build_shishkin_mesh, build_uniform_mesh
from .problem import TwoParamBVP
from .reduced import ReducedSolution, eval_reduced

# Fine mesh for the two-mesh estimate:
#   INTERPOLATED - Shishkin mesh with 2N elements and its own transition points;
#                  the fine solution is interpolated linearly onto the coarse nodes.
#   BISECTION    - every coarse element halved (transition points frozen); coarse
#                  nodes are read directly from the fine solution.
INTERPOLATED = "interpolated"
BISECTION = "bisection"
TWO_MESH_VARIANTS = (INTERPOLATED, BISECTION)


@dataclass(frozen=True, eq=False)
class DiscreteSolution:
    mesh: PiecewiseUniformMesh
    values: np.ndarray

    @property
    def x(self) -> np.ndarray:
        return self.mesh.points


@dataclass
class ConvergenceReport:
    eps_grid: list[tuple[float, float]]
    n_list: list[int]
    d_eps_n: np.ndarray
    d_n: np.ndarray
    p_n: np.ndarray
    p_star: float
    c_p_n: np.ndarray
    c_p_star: float


def build_mesh(bvp: TwoParamBVP, N: int, kind: str = SHISHKIN) -> PiecewiseUniformMesh:
    if kind == SHISHKIN:
        return build_shishkin_mesh(bvp.eps1, bvp.eps2, bvp.alpha, N)
    if kind == UNIFORM:
        return build_uniform_mesh(N)
    raise ArgumentError(f"unknown mesh kind {kind!r}")


def solve_on_mesh(bvp: TwoParamBVP, mesh: PiecewiseUniformMesh) -> DiscreteSolution:
    interior = solve_block_tridiagonal(assemble(bvp, mesh))
    values = np.vstack([bvp.left_bc, interior, bvp.right_bc])
    return DiscreteSolution(mesh, values)


def solve_bvp(bvp: TwoParamBVP, N: int, kind: str = SHISHKIN) -> DiscreteSolution:
    """Mesh, assemble and solve; returned values include both boundary nodes."""
    return solve_on_mesh(bvp, build_mesh(bvp, N, kind))


def fine_mesh(coarse: PiecewiseUniformMesh, bvp: TwoParamBVP, variant: str = INTERPOLATED) -> PiecewiseUniformMesh:
    if variant == BISECTION:
        return coarse.bisect()
    if variant == INTERPOLATED:
        if coarse.kind == UNIFORM:
            return build_uniform_mesh(2 * coarse.n_elements)
        return build_shishkin_mesh(bvp.eps1, bvp.eps2, bvp.alpha, 2 * coarse.n_elements)
    raise ArgumentError(f"unknown two-mesh variant {variant!r}; choose from {TWO_MESH_VARIANTS}")


def two_mesh_difference(bvp: TwoParamBVP, N: int, kind: str = SHISHKIN, variant: str = INTERPOLATED) -> float:
    """max over coarse nodes and both components of |U^N - U^2N|."""
    coarse = build_mesh(bvp, N, kind)
    fine = fine_mesh(coarse, bvp, variant)
    u_coarse = solve_on_mesh(bvp, coarse).values
    u_fine = solve_on_mesh(bvp, fine).values
    if variant == BISECTION:
        on_coarse = u_fine[::2]
    else:
        on_coarse = np.column_stack([np.interp(coarse.points, fine.points, u_fine[:, i]) for i in range(2)])
    return float(np.abs(u_coarse - on_coarse).max())


def paper_eps_grid() -> list[tuple[float, float]]:
    """(eps1, eps2) = (5^-(3+k), 2^-(6+k)) for k = 1..15."""
    return [(5.0 ** -(3 + k), 2.0 ** -(6 + k)) for k in range(1, 16)]


def summarize(eps_grid, n_list, d_eps_n) -> ConvergenceReport:
    """Derive D^N, p^N, p*, C^N_p* and C_p* from the table of two-mesh differences."""
    d_eps_n = np.asarray(d_eps_n, dtype=float)
    d_n = d_eps_n.max(axis=0)
    p_n = np.log2(d_n[:-1] / d_n[1:])
    p_star = float(p_n.min()) if p_n.size else math.nan
    ns = np.asarray(n_list, dtype=float)
    c_p_n = d_n * ns**p_star / (1.0 - 2.0**-p_star)
    return ConvergenceReport(list(eps_grid), list(n_list), d_eps_n, d_n, p_n, p_star,
                             c_p_n, float(c_p_n.max()))


def uniform_table(bvp_family: Callable[[float, float], TwoParamBVP],
                  eps_grid: Sequence[tuple[float, float]],
                  n_list: Sequence[int],
                  kind: str = SHISHKIN,
                  variant: str = INTERPOLATED,
                  max_workers: int | None = None) -> ConvergenceReport:
    """Two-mesh differences for every (eps, N) and the derived uniform quantities.

    ``bvp_family(eps1, eps2)`` builds the problem for one row.  Cells are
    independent; with ``max_workers`` they run on a thread pool but are
    stored by index, so the report does not depend on completion order.
    """
    n_list = [int(n) for n in n_list]
    if len(n_list) < 2:
        raise ArgumentError("n_list needs at least two entries")
    for a, b in zip(n_list, n_list[1:]):
        if b != 2 * a:
            raise ArgumentError(f"n_list must double at each step ({a} -> {b})")
    if kind == SHISHKIN and any(n % 4 for n in n_list):
        raise ArgumentError("every N must be a multiple of 4")
    eps_grid = [(float(e1), float(e2)) for e1, e2 in eps_grid]

    problems = [bvp_family(e1, e2) for e1, e2 in eps_grid]
    cells = [(r, c) for r in range(len(problems)) for c in range(len(n_list))]
    d = np.empty((len(problems), len(n_list)))

    def work(cell):
        r, c = cell
        return two_mesh_difference(problems[r], n_list[c], kind, variant)

    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers) as pool:
            results = list(pool.map(work, cells))
    else:
        results = [work(cell) for cell in cells]
    for (r, c), value in zip(cells, results):
        d[r, c] = value
    return summarize(eps_grid, n_list, d)


def layer_width(sol: DiscreteSolution, rsol: ReducedSolution, component: int, threshold: float) -> float:
    """Smallest mesh point beyond which |U - u0| stays within ``threshold``.

    Returns 0.0 when the whole solution is within the threshold.
    """
    if component not in (1, 2):
        raise ArgumentError(f"component must be 1 or 2, got {component}")
    if threshold <= 0:
        raise ArgumentError("threshold must be positive")
    x = sol.x
    outer = eval_reduced(rsol, x)[:, component - 1]
    far = np.abs(sol.values[:, component - 1] - outer) > threshold
    if not far.any():
        return 0.0
    last = int(np.flatnonzero(far)[-1])
    if last == len(x) - 1:
        return 1.0
    return float(x[last + 1])
