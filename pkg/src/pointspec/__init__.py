"""Spectral laboratory for a particle in a box / on a circle with one point interaction.

The self-adjoint dynamics is fixed by a U(2) point: boundary conditions
(U - I) Psi + i L0 (U + I) Psi' = 0 on the two wall values.  This package
enumerates that family, classifies its distinguished subfamilies, solves the
transcendental level conditions, constructs eigenfunctions, and verifies the
Euclidean propagator identities (spectral sums against classical-image sums)
together with a finite-difference oracle.
"""

from .errors import (
    ConstraintError,
    ContradictionError,
    PointspecError,
    RootNotFoundError,
    SubfamilyError,
    TailBoundError,
    ZeroFunctionError,
)
from .u2param import (
    INFINITE_LENGTH,
    InfiniteLength,
    SeparatedLengths,
    SubfamilyFlags,
    U2Params,
    classify,
    is_infinite,
    make_u2,
    separated_lengths,
    to_matrix,
    twist_angle,
)
from .spectral import (
    BoxGeometry,
    Level,
    Spectrum,
    find_negative_roots,
    find_positive_roots,
    negative_condition,
    positive_condition,
    spectral_fingerprint,
    spectrum,
    zero_mode_condition,
    zero_mode_exists,
)
from .eigenstates import (
    BoundaryData,
    Mode,
    ScaleInvariantCoefficients,
    boundary_data,
    boundary_residual,
    mode_inner,
    negative_mode,
    normalize,
    probability_current,
    scale_invariant_coefficients,
    scale_invariant_mode,
    solve_coefficients,
    zero_mode,
)
from .kernels import (
    EuclideanTime,
    ImageTerm,
    KernelTermList,
    build_image_terms,
    gaussian_prefactor,
    halfline_image_kernel,
    image_heat_kernel,
    image_pair_weights,
    images_needed,
    spectral_heat_kernel,
    spectral_levels_needed,
    theta3,
)
from .halfline import (
    WallParam,
    bound_state,
    halfline_current,
    reflection_coefficient,
    robin_heat_kernel,
    scattering_state,
    scattering_state_dx,
    spectral_kernel_by_quadrature,
    wall_from_angle,
    wall_from_length,
)
from .oracle import FdConfig, fd_spectrum

__version__ = "0.1.0"

__all__ = [
    "BoundaryData",
    "BoxGeometry",
    "ConstraintError",
    "ContradictionError",
    "EuclideanTime",
    "FdConfig",
    "INFINITE_LENGTH",
    "ImageTerm",
    "InfiniteLength",
    "KernelTermList",
    "Level",
    "Mode",
    "PointspecError",
    "RootNotFoundError",
    "ScaleInvariantCoefficients",
    "SeparatedLengths",
    "Spectrum",
    "SubfamilyError",
    "SubfamilyFlags",
    "TailBoundError",
    "U2Params",
    "WallParam",
    "ZeroFunctionError",
    "bound_state",
    "boundary_data",
    "boundary_residual",
    "build_image_terms",
    "classify",
    "fd_spectrum",
    "find_negative_roots",
    "find_positive_roots",
    "gaussian_prefactor",
    "halfline_current",
    "halfline_image_kernel",
    "image_heat_kernel",
    "image_pair_weights",
    "images_needed",
    "is_infinite",
    "make_u2",
    "mode_inner",
    "negative_condition",
    "negative_mode",
    "normalize",
    "positive_condition",
    "probability_current",
    "reflection_coefficient",
    "robin_heat_kernel",
    "scale_invariant_coefficients",
    "scale_invariant_mode",
    "scattering_state",
    "scattering_state_dx",
    "separated_lengths",
    "solve_coefficients",
    "spectral_fingerprint",
    "spectral_heat_kernel",
    "spectral_kernel_by_quadrature",
    "spectral_levels_needed",
    "spectrum",
    "theta3",
    "to_matrix",
    "twist_angle",
    "wall_from_angle",
    "wall_from_length",
    "zero_mode",
    "zero_mode_condition",
    "zero_mode_exists",
]
