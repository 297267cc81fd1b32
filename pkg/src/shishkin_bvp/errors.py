"""Exception hierarchy shared by every module of the package."""


class BVPError(Exception):
    """Base class for all errors raised by shishkin_bvp."""


class ArgumentError(BVPError, ValueError):
    """An argument violates a precondition (bad N, nonpositive epsilon, ...)."""


class CatalogError(BVPError, KeyError):
    """Unknown built-in problem name."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown problem"


class EvaluationError(BVPError, ArithmeticError):
    """A coefficient or expression could not be evaluated to a finite value."""


class NumericalFailure(BVPError, ArithmeticError):
    """A linear solve or integration broke down."""
