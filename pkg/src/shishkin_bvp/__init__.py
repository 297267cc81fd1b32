"""Upwind finite differences on Shishkin meshes for weakly coupled systems of two
singularly perturbed convection-diffusion equations."""

from .convergence import (ConvergenceReport, DiscreteSolution, layer_width, paper_eps_grid, solve_bvp,
                          two_mesh_difference, uniform_table)
from .discretize import (BlockTridiagonalSystem, MeshFunctionPair, apply_discrete_operator, assemble,
                         backward_difference, forward_difference, second_difference)
from .errors import ArgumentError, BVPError, CatalogError, EvaluationError, NumericalFailure
from .expr import ExprSyntaxError, eval_expression, parse_expression
from .linsolve import residual, solve_block_tridiagonal, solve_dense_oracle
from .mesh import (PiecewiseUniformMesh, build_shishkin_mesh, build_uniform_mesh, mesh_steps,
                   transition_parameters)
from .problem import TwoParamBVP, ValidationReport, builtin_problem, layer_function, validate_problem
from .reduced import ReducedSolution, eval_reduced, solve_reduced

__version__ = "0.1.0"
