"""Exception types shared across the package."""
from __future__ import annotations


class RankDeficientError(ValueError):
    """A bilateral linear system has no unique solution."""

    def __init__(self, rank: int):
        super().__init__(f"rank-deficient bilateral form (rank {rank})")
        self.rank = rank


class SingularMatrixError(ValueError):
    """A quaternionic matrix is not invertible."""

    def __init__(self, sdet: float):
        super().__init__(f"singular matrix (Sdet = {sdet:.3e})")
        self.sdet = sdet


class ConsistencyError(ArithmeticError):
    """A computed quantity violated an identity it must satisfy."""


class PolynomialCaseError(ValueError):
    """The (1,3) entry is zero, so the matrix has no pole."""


class DiagonalCaseError(ValueError):
    """Both off-diagonal entries of a 2x2 matrix vanish."""


class PoleIsEigenvalueError(ValueError):
    """The pole is a left eigenvalue; the continuous rational map applies."""


class DifferentialUndefinedError(ValueError):
    """The characteristic map is not known to be differentiable at the point."""


class NoRootFoundError(RuntimeError):
    """Multi-start Newton returned no verified left eigenvalue."""
