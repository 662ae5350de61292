"""Left spectra of 2x2 and 3x3 quaternionic matrices.

Characteristic maps, Study determinants, quasideterminants and real
linearisations of quaternionic linear maps, plus a Newton solver built on them.
"""
from .charmap import (
    CharMap,
    all_poles,
    char2,
    char3,
    companion2,
    diff2,
    diff3,
    pole,
    pole_is_eigenvalue,
    rational_map,
    reduce_discontinuous,
)
from .errors import (
    ConsistencyError,
    DiagonalCaseError,
    DifferentialUndefinedError,
    NoRootFoundError,
    PoleIsEigenvalueError,
    PolynomialCaseError,
    RankDeficientError,
    SingularMatrixError,
)
from .linearize import (
    BilateralForm,
    bilateral_matrix,
    left_matrix,
    numeric_rank,
    right_matrix,
    solve_bilateral,
    sylvester_det,
    sylvester_matrix,
)
from .quat import I, J, K, ONE, ZERO, Quaternion, format_quaternion, inv, mul, parse_quaternion, similar
from .sdet import complex_adjoint, inverse, quasidet, sdet
from .solver import (
    RootInfo,
    SolverConfig,
    SpectrumReport,
    SphericalFamily,
    eigen_bound,
    newton,
    sigma_oracle,
    spectrum,
    spectrum2,
    spectrum3,
)

__version__ = "0.1.0"
