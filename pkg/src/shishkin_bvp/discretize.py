"""Upwind finite differences on a nonuniform mesh and block-tridiagonal assembly.

At every interior node x_j the discrete operator is

    L^N U(x_j) = E d2 U(x_j) + A(x_j) D+ U(x_j) - B(x_j) U(x_j)

with D+ the forward difference, D- the backward difference and
d2 = (D+ - D-) / hbar_j.  The assembled matrix keeps this sign (negative
diagonal); it is not negated into a positive-definite form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError
from .mesh import PiecewiseUniformMesh
from .problem import TwoParamBVP


@dataclass(frozen=True, eq=False)
class BlockTridiagonalSystem:
    """Rows ``sub[k] U[k-1] + diag[k] U[k] + sup[k] U[k+1] = rhs[k]``, k = 0..n-1.

    Row k is mesh node j = k + 1.  ``sub[0]`` and ``sup[n-1]`` are zero; the
    boundary values they would multiply have already been moved into ``rhs``.
    Blocks have shape ``(n, 2, 2)``, ``rhs`` has shape ``(n, 2)``.
    """

    sub: np.ndarray
    diag: np.ndarray
    sup: np.ndarray
    rhs: np.ndarray
    boundary_left: tuple[float, float] = (0.0, 0.0)
    boundary_right: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        n = len(self.diag)
        for name in ("sub", "diag", "sup"):
            block = getattr(self, name)
            if block.shape != (n, 2, 2):
                raise ArgumentError(f"{name} has shape {block.shape}, expected {(n, 2, 2)}")
        if self.rhs.shape != (n, 2):
            raise ArgumentError(f"rhs has shape {self.rhs.shape}, expected {(n, 2)}")

    @property
    def n_unknown_nodes(self) -> int:
        return len(self.diag)

    def matvec(self, values) -> np.ndarray:
        """Apply the block matrix (boundary columns excluded) to interior values."""
        u = np.asarray(values, dtype=float).reshape(self.n_unknown_nodes, 2)
        out = np.einsum("kab,kb->ka", self.diag, u)
        out[1:] += np.einsum("kab,kb->ka", self.sub[1:], u[:-1])
        out[:-1] += np.einsum("kab,kb->ka", self.sup[:-1], u[1:])
        return out

    def to_dense(self) -> np.ndarray:
        n = self.n_unknown_nodes
        m = np.zeros((2 * n, 2 * n))
        for k in range(n):
            m[2 * k:2 * k + 2, 2 * k:2 * k + 2] = self.diag[k]
            if k > 0:
                m[2 * k:2 * k + 2, 2 * k - 2:2 * k] = self.sub[k]
            if k < n - 1:
                m[2 * k:2 * k + 2, 2 * k + 2:2 * k + 4] = self.sup[k]
        return m


@dataclass(frozen=True, eq=False)
class MeshFunctionPair:
    """Values ``(U1(x_j), U2(x_j))`` at all N+1 mesh nodes, shape ``(N+1, 2)``."""

    mesh: PiecewiseUniformMesh
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (len(self.mesh.points), 2):
            raise ArgumentError(f"values shape {values.shape} does not match mesh with {len(self.mesh.points)} points")
        object.__setattr__(self, "values", values)


def _check_node(mesh, j, lo, hi):
    if not lo <= j <= hi:
        raise IndexError(f"node {j} outside [{lo}, {hi}]")


def forward_difference(values, mesh: PiecewiseUniformMesh, j: int) -> float:
    _check_node(mesh, j, 0, mesh.n_elements - 1)
    x = mesh.points
    return (values[j + 1] - values[j]) / (x[j + 1] - x[j])


def backward_difference(values, mesh: PiecewiseUniformMesh, j: int) -> float:
    _check_node(mesh, j, 1, mesh.n_elements)
    x = mesh.points
    return (values[j] - values[j - 1]) / (x[j] - x[j - 1])


def second_difference(values, mesh: PiecewiseUniformMesh, j: int) -> float:
    _check_node(mesh, j, 1, mesh.n_elements - 1)
    x = mesh.points
    hbar = (x[j + 1] - x[j - 1]) / 2
    return (forward_difference(values, mesh, j) - backward_difference(values, mesh, j)) / hbar


def _interior_steps(mesh):
    h = mesh.steps
    h_left, h_right = h[:-1], h[1:]
    return h_left, h_right, (h_left + h_right) / 2


def assemble(bvp: TwoParamBVP, mesh: PiecewiseUniformMesh) -> BlockTridiagonalSystem:
    """Assemble the upwind scheme on ``mesh`` with the boundary values eliminated."""
    if mesh.n_elements < 2:
        raise ArgumentError("mesh needs at least one interior node")
    x = mesh.points[1:-1]
    n = len(x)
    c = bvp.coefficients(x)
    h_left, h_right, hbar = _interior_steps(mesh)

    a = (c["a1"], c["a2"])
    b_diag = (c["b11"], c["b22"])
    b_coupling = (c["b12"], c["b21"])

    sub = np.zeros((n, 2, 2))
    diag = np.zeros((n, 2, 2))
    sup = np.zeros((n, 2, 2))
    for i, eps in enumerate(bvp.eps):
        lower = eps / (hbar * h_left)
        upper = eps / (hbar * h_right) + a[i] / h_right
        sub[:, i, i] = lower
        sup[:, i, i] = upper
        diag[:, i, i] = -eps / hbar * (1.0 / h_left + 1.0 / h_right) - a[i] / h_right - b_diag[i]
        diag[:, i, 1 - i] = b_coupling[i]

    rhs = np.column_stack([c["f1"], c["f2"]])
    left = np.array(bvp.left_bc)
    right = np.array(bvp.right_bc)
    rhs[0] -= np.diagonal(sub[0]) * left
    rhs[-1] -= np.diagonal(sup[-1]) * right
    sub[0] = 0.0
    sup[-1] = 0.0
    return BlockTridiagonalSystem(sub, diag, sup, rhs, bvp.left_bc, bvp.right_bc)


def apply_discrete_operator(bvp: TwoParamBVP, mesh: PiecewiseUniformMesh, psi: MeshFunctionPair) -> np.ndarray:
    """``(L^N psi)(x_j)`` for j = 1..N-1, shape ``(N-1, 2)``, from the difference formulas."""
    if psi.mesh is not mesh and not np.array_equal(psi.mesh.points, mesh.points):
        raise ArgumentError("mesh function is defined on a different mesh")
    x = mesh.points
    u = psi.values
    c = bvp.coefficients(x[1:-1])
    h_left, h_right, hbar = _interior_steps(mesh)

    d_plus = (u[2:] - u[1:-1]) / h_right[:, None]
    d_minus = (u[1:-1] - u[:-2]) / h_left[:, None]
    d2 = (d_plus - d_minus) / hbar[:, None]
    inner = u[1:-1]

    out = np.empty_like(inner)
    out[:, 0] = bvp.eps1 * d2[:, 0] + c["a1"] * d_plus[:, 0] - c["b11"] * inner[:, 0] + c["b12"] * inner[:, 1]
    out[:, 1] = bvp.eps2 * d2[:, 1] + c["a2"] * d_plus[:, 1] + c["b21"] * inner[:, 0] - c["b22"] * inner[:, 1]
    return out
