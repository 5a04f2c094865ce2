"""Gabor analysis on finite abelian groups."""

from .errors import (
    DomainError,
    GaborError,
    GroupMismatchError,
    InvalidGroupError,
    InvalidLatticeError,
    InvalidParameterError,
    NotAFrameError,
    NumericError,
    PreconditionError,
    RankDeficiencyError,
    SchemaError,
    ShapeError,
    SingularityError,
)
from .gabor import (
    FrameDiagnostics,
    GaborSystem,
    RonShenReport,
    analyze,
    figa_sides,
    frame_bounds,
    frame_operator,
    frame_type_operator,
    gram_matrix,
    janssen_coefficients,
    janssen_operator,
    ron_shen_report,
    synthesis_matrix,
    synthesize,
    wexler_raz_is_dual,
    wexler_raz_residual,
)
from .group import (
    GroupSpec,
    Lattice,
    TFPoint,
    adjoint_subgroup,
    enumerate_subgroup,
    heisenberg_multiply,
    is_isotropic,
    make_group,
    separable_lattice,
)
from .spreading import (
    lattice_twisted_convolution,
    operator_of,
    poisson_sides,
    spreading_of,
    symplectic_fourier,
    twisted_convolution,
    twisted_involution,
)
from .tfa import PlaneFunction, Signal, inner, modulate, stft, stft_adjoint, tf_shift, tf_shift_matrix, translate
from .windows import (
    canonical_dual,
    canonical_tight,
    dual_optimality_report,
    dual_window_space,
    gram_system_dual,
    lowdin_orthonormalize,
    moore_penrose_check,
    tight_connecting_isometry,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "FrameDiagnostics",
    "GaborError",
    "GaborSystem",
    "GroupMismatchError",
    "GroupSpec",
    "InvalidGroupError",
    "InvalidLatticeError",
    "InvalidParameterError",
    "Lattice",
    "NotAFrameError",
    "NumericError",
    "PlaneFunction",
    "PreconditionError",
    "RankDeficiencyError",
    "RonShenReport",
    "SchemaError",
    "ShapeError",
    "Signal",
    "SingularityError",
    "TFPoint",
    "adjoint_subgroup",
    "analyze",
    "canonical_dual",
    "canonical_tight",
    "dual_optimality_report",
    "dual_window_space",
    "enumerate_subgroup",
    "figa_sides",
    "frame_bounds",
    "frame_operator",
    "frame_type_operator",
    "gram_matrix",
    "gram_system_dual",
    "heisenberg_multiply",
    "inner",
    "is_isotropic",
    "janssen_coefficients",
    "janssen_operator",
    "lattice_twisted_convolution",
    "lowdin_orthonormalize",
    "make_group",
    "modulate",
    "moore_penrose_check",
    "operator_of",
    "poisson_sides",
    "ron_shen_report",
    "separable_lattice",
    "spreading_of",
    "stft",
    "stft_adjoint",
    "symplectic_fourier",
    "synthesis_matrix",
    "synthesize",
    "tf_shift",
    "tf_shift_matrix",
    "tight_connecting_isometry",
    "translate",
    "twisted_convolution",
    "twisted_involution",
    "wexler_raz_is_dual",
    "wexler_raz_residual",
]
