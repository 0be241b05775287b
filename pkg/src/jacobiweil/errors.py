"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input is outside the mathematical domain of the operation."""


class AsymmetryError(ValueError):
    """A matrix that must be symmetric has an asymmetry defect above tolerance."""


class EigenSolverError(RuntimeError):
    """Eigensolver failed to converge; carries the offending matrix."""

    def __init__(self, message, matrix):
        super().__init__(message)
        self.matrix = matrix


class ResourceError(RuntimeError):
    """Requested tolerance unreachable within the configured resource cap."""


class ConvergenceError(RuntimeError):
    """Successive refinements disagree beyond the requested tolerance."""


class InvariantViolation(ValueError):
    """A structural invariant that should hold by construction failed."""
