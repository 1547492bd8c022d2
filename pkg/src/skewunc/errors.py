"""Exception hierarchy shared by all skewunc modules."""

from __future__ import annotations


class SkewuncError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(SkewuncError, ValueError):
    """Input fails a documented precondition (domain, range, or structure)."""


class ShapeError(ValidationError):
    """Matrix or vector dimensions are incompatible."""


class InvalidStateError(ValidationError):
    """A matrix violates the density-operator invariants beyond tolerance."""


class SolverError(SkewuncError):
    """A numerical solver failed to converge.

    Carries ``input_hash`` so the offending input can be identified in logs.
    """

    def __init__(self, message: str, input_hash: str | None = None):
        super().__init__(message if input_hash is None
                         else f"{message} (input sha1: {input_hash})")
        self.input_hash = input_hash


class NumericalConsistencyError(SkewuncError):
    """A computed quantity is negative (or inconsistent) beyond float noise.

    Raised instead of silently clipping, to distinguish implementation bugs
    from harmless rounding.
    """


class OptimizerError(SkewuncError):
    """Every optimizer restart failed; carries the best value found so far."""

    def __init__(self, message: str, best_value: float | None = None):
        super().__init__(message)
        self.best_value = best_value


class ConfigError(SkewuncError, ValueError):
    """A CLI or file configuration is invalid."""
