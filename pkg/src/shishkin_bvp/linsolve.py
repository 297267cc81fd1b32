"""Direct solvers for 2x2 block-tridiagonal systems."""

from __future__ import annotations

import numpy as np

from .discretize import BlockTridiagonalSystem
from .errors import NumericalFailure

PIVOT_DET_MIN = 1e-30


def solve_block_tridiagonal(system: BlockTridiagonalSystem) -> np.ndarray:
    """Block Thomas sweep without pivoting across block rows.

    Returns the interior values, shape ``(n, 2)``.  The 2x2 pivot blocks are
    inverted in closed form; a pivot with ``|det| < 1e-30`` raises
    NumericalFailure naming the row.
    """
    n = system.n_unknown_nodes
    # plain floats: the sweep is sequential and numpy per-element overhead dominates
    sub = system.sub.reshape(n, 4).tolist()
    diag = system.diag.reshape(n, 4).tolist()
    sup = system.sup.reshape(n, 4).tolist()
    rhs = system.rhs.tolist()

    inv = [None] * n  # inverse pivot blocks (p, q, r, s) for [[p, q], [r, s]]
    g = [None] * n
    prev_inv = prev_g = prev_sup = None
    for k in range(n):
        d00, d01, d10, d11 = diag[k]
        g0, g1 = rhs[k]
        if k > 0:
            s00, s01, s10, s11 = sub[k]
            i00, i01, i10, i11 = prev_inv
            # m = sub[k] @ inv(P_{k-1})
            m00 = s00 * i00 + s01 * i10
            m01 = s00 * i01 + s01 * i11
            m10 = s10 * i00 + s11 * i10
            m11 = s10 * i01 + s11 * i11
            u00, u01, u10, u11 = prev_sup
            d00 -= m00 * u00 + m01 * u10
            d01 -= m00 * u01 + m01 * u11
            d10 -= m10 * u00 + m11 * u10
            d11 -= m10 * u01 + m11 * u11
            pg0, pg1 = prev_g
            g0 -= m00 * pg0 + m01 * pg1
            g1 -= m10 * pg0 + m11 * pg1
        det = d00 * d11 - d01 * d10
        if not abs(det) >= PIVOT_DET_MIN:
            raise NumericalFailure(f"singular pivot block at row {k + 1} (det={det:g})")
        prev_inv = inv[k] = (d11 / det, -d01 / det, -d10 / det, d00 / det)
        prev_g = g[k] = (g0, g1)
        prev_sup = sup[k]

    u = [None] * n
    next_u = (0.0, 0.0)
    for k in range(n - 1, -1, -1):
        g0, g1 = g[k]
        if k < n - 1:
            u00, u01, u10, u11 = sup[k]
            g0 -= u00 * next_u[0] + u01 * next_u[1]
            g1 -= u10 * next_u[0] + u11 * next_u[1]
        i00, i01, i10, i11 = inv[k]
        next_u = u[k] = (i00 * g0 + i01 * g1, i10 * g0 + i11 * g1)

    out = np.array(u, dtype=float)
    if not np.all(np.isfinite(out)):
        raise NumericalFailure("block Thomas sweep produced non-finite values")
    return out


def solve_dense_oracle(system: BlockTridiagonalSystem) -> np.ndarray:
    """Expand to a full ``2n x 2n`` matrix and solve by LU with partial pivoting."""
    matrix = system.to_dense()
    try:
        sol = np.linalg.solve(matrix, system.rhs.reshape(-1))
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"dense oracle: {exc}") from exc
    if np.linalg.cond(matrix) > 1e15 or not np.all(np.isfinite(sol)):
        raise NumericalFailure("dense oracle: matrix is numerically singular")
    return sol.reshape(-1, 2)


def residual(system: BlockTridiagonalSystem, values) -> float:
    """Infinity norm of ``M values - rhs``."""
    r = system.matvec(values) - system.rhs
    return float(np.abs(r).max()) if r.size else 0.0
