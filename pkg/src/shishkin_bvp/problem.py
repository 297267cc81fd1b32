"""Problem instances for the coupled system

    E u'' + A(x) u' - B(x) u = f(x)  on (0, 1),   u(0) = l,  u(1) = r,

with E = diag(eps1, eps2), A = diag(a1, a2) and
B = [[b11, -b12], [-b21, b22]].

Coefficients are plain callables of one real variable.  They are evaluated
on numpy arrays of mesh points, so built-ins are written with numpy ufuncs;
callables returning a scalar for array input (constants) are broadcast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .errors import ArgumentError, CatalogError, EvaluationError

ScalarField = Callable[[np.ndarray], np.ndarray]

COEFFICIENT_NAMES = ("a1", "a2", "b11", "b12", "b21", "b22", "f1", "f2")

DEFAULT_EPS1 = 5.0**-4
DEFAULT_EPS2 = 2.0**-7


def evaluate_field(fn: ScalarField, x, name: str = "field") -> np.ndarray:
    """Evaluate ``fn`` at the points ``x`` and return a float array of the same shape.

    Raises EvaluationError if any value is not finite; the message names the
    field and the first offending point.
    """
    xs = np.asarray(x, dtype=float)
    try:
        with np.errstate(all="ignore"):
            values = np.asarray(fn(xs), dtype=float)
    except EvaluationError as exc:
        raise EvaluationError(f"{name}: {exc}") from exc
    values = np.broadcast_to(values, xs.shape).astype(float)
    bad = ~np.isfinite(values)
    if bad.any():
        x_bad = float(np.atleast_1d(xs)[np.argmax(np.atleast_1d(bad))])
        raise EvaluationError(f"{name} is not finite at x={x_bad!r}")
    return values


def _const(c: float) -> ScalarField:
    return lambda x: np.full(np.shape(x), float(c))


@dataclass(frozen=True)
class TwoParamBVP:
    eps1: float
    eps2: float
    a1: ScalarField
    a2: ScalarField
    b11: ScalarField
    b12: ScalarField
    b21: ScalarField
    b22: ScalarField
    f1: ScalarField
    f2: ScalarField
    left_bc: tuple[float, float]
    right_bc: tuple[float, float]
    alpha: float
    beta: float
    name: str = "custom"

    def __post_init__(self):
        if not (self.eps1 > 0 and self.eps2 > 0):
            raise ArgumentError(f"perturbation parameters must be positive, got {self.eps1}, {self.eps2}")
        if not (self.alpha > 0 and self.beta > 0):
            raise ArgumentError(f"alpha and beta must be positive, got {self.alpha}, {self.beta}")
        object.__setattr__(self, "left_bc", tuple(float(v) for v in self.left_bc))
        object.__setattr__(self, "right_bc", tuple(float(v) for v in self.right_bc))
        if len(self.left_bc) != 2 or len(self.right_bc) != 2:
            raise ArgumentError("boundary vectors must have two components")

    @property
    def eps(self) -> tuple[float, float]:
        return (self.eps1, self.eps2)

    def coefficients(self, x) -> dict[str, np.ndarray]:
        """All eight coefficient fields sampled at ``x``."""
        return {name: evaluate_field(getattr(self, name), x, name) for name in COEFFICIENT_NAMES}

    def with_eps(self, eps1: float, eps2: float) -> "TwoParamBVP":
        """Same problem with new perturbation parameters.

        Built-ins are rebuilt from the catalog (the ms1 source depends on
        epsilon); other problems keep their coefficient callables.
        """
        if self.name in _CATALOG:
            return builtin_problem(self.name, eps1, eps2)
        return replace(self, eps1=eps1, eps2=eps2)


@dataclass
class ValidationReport:
    alpha_estimate: float
    beta_estimate: float
    offdiag_min: float
    sample_count: int
    warnings: list[str] = field(default_factory=list)
    ok: bool = True


def _ex1(eps1, eps2):
    return TwoParamBVP(
        eps1, eps2,
        a1=lambda x: 1.0 + x**2,
        a2=lambda x: 2.0 + x,
        b11=lambda x: 4.0 + np.sin(x),
        b12=_const(2.0),
        b21=_const(1.0),
        b22=lambda x: 2.0 + np.cos(x),
        f1=lambda x: -np.exp(x),
        f2=lambda x: -(x**2),
        left_bc=(3.0, 3.0),
        right_bc=(1.0, 1.0),
        alpha=1.0,
        beta=1.0 + math.cos(1.0),
        name="ex1",
    )


def _ex2_coefficients():
    return dict(
        a1=_const(1.0),
        a2=lambda x: 1.0 + x,
        b11=_const(2.0),
        b12=_const(1.0),
        b21=lambda x: 1.0 * x,
        b22=lambda x: 2.0 * x + 1.0,
        f1=lambda x: -3.0 * (x - 1.0),
        f2=lambda x: -2.0 * x,
    )


def _ex2(eps1, eps2):
    return TwoParamBVP(eps1, eps2, **_ex2_coefficients(), left_bc=(0.0, 3.0), right_bc=(2.0, 2.0),
                       alpha=1.0, beta=1.0, name="ex2")


def _ex3(eps1, eps2):
    return TwoParamBVP(eps1, eps2, **_ex2_coefficients(), left_bc=(1.0, 1.0), right_bc=(2.0, 2.0),
                       alpha=1.0, beta=1.0, name="ex3")


def _ms1(eps1, eps2):
    # exact solution u1 = x(1-x), u2 = x^2(1-x); f is L applied to it
    def f1(x):
        u1, u2 = x * (1 - x), x**2 * (1 - x)
        return eps1 * -2.0 + (1 - 2 * x) - 2.0 * u1 + u2

    def f2(x):
        u1, u2 = x * (1 - x), x**2 * (1 - x)
        return eps2 * (2 - 6 * x) + (2 * x - 3 * x**2) + u1 - 2.0 * u2

    return TwoParamBVP(
        eps1, eps2,
        a1=_const(1.0), a2=_const(1.0),
        b11=_const(2.0), b12=_const(1.0), b21=_const(1.0), b22=_const(2.0),
        f1=f1, f2=f2,
        left_bc=(0.0, 0.0), right_bc=(0.0, 0.0),
        alpha=1.0, beta=1.0, name="ms1",
    )


def ms1_exact(x) -> np.ndarray:
    """Exact solution of the manufactured problem, shape ``(len(x), 2)``."""
    x = np.asarray(x, dtype=float)
    return np.stack([x * (1 - x), x**2 * (1 - x)], axis=-1)


_CATALOG = {"ex1": _ex1, "ex2": _ex2, "ex3": _ex3, "ms1": _ms1}
BUILTIN_NAMES = tuple(_CATALOG)


def builtin_problem(name: str, eps1: float = DEFAULT_EPS1, eps2: float = DEFAULT_EPS2) -> TwoParamBVP:
    """Return one of the built-in problems ``ex1``, ``ex2``, ``ex3`` or ``ms1``."""
    try:
        factory = _CATALOG[name]
    except KeyError:
        raise CatalogError(f"unknown problem {name!r}; choose from {', '.join(BUILTIN_NAMES)}") from None
    return factory(float(eps1), float(eps2))


def validate_problem(bvp: TwoParamBVP, sample_count: int = 1001) -> ValidationReport:
    """Check the coefficient assumptions on an equispaced sample of [0, 1]."""
    if sample_count < 2:
        raise ArgumentError("sample_count must be at least 2")
    x = np.linspace(0.0, 1.0, sample_count)
    c = bvp.coefficients(x)

    alpha_est = float(min(c["a1"].min(), c["a2"].min()))
    beta_est = float(min((c["b11"] - c["b12"]).min(), (c["b22"] - c["b21"]).min()))
    offdiag = float(min(c["b12"].min(), c["b21"].min()))

    warnings = []
    if offdiag <= 0:
        where = x[np.argmin(np.minimum(c["b12"], c["b21"]))]
        warnings.append(f"off-diagonal coefficient not strictly positive (min {offdiag:g} at x={where:g})")
    if bvp.eps1 > bvp.eps2:
        warnings.append(f"eps1={bvp.eps1:g} exceeds eps2={bvp.eps2:g}; swap the equations")
    elif bvp.eps1 == bvp.eps2:
        warnings.append("eps1 == eps2: the mesh degenerates to a single layer region")
    if alpha_est <= 0:
        warnings.append(f"convection coefficient not positive (min {alpha_est:g})")
    elif alpha_est < bvp.alpha:
        warnings.append(f"stored alpha={bvp.alpha:g} exceeds sampled minimum {alpha_est:g}")
    if beta_est <= 0:
        warnings.append(f"coupling margin b_ii - b_ij not positive (min {beta_est:g})")

    ok = alpha_est > 0 and beta_est > 0 and bvp.eps1 <= bvp.eps2
    return ValidationReport(alpha_est, beta_est, offdiag, sample_count, warnings, ok)


def layer_function(which: int, x: float, alpha: float, eps: float) -> float:
    """exp(-alpha x / eps); ``which`` (1 or 2) only tags which epsilon is meant."""
    if which not in (1, 2):
        raise ArgumentError(f"which must be 1 or 2, got {which}")
    if not 0.0 <= x <= 1.0:
        raise ArgumentError(f"x={x} outside [0, 1]")
    if eps <= 0 or alpha <= 0:
        raise ArgumentError("alpha and eps must be positive")
    return math.exp(-alpha * x / eps)
