"""Negativity, CREN and the superactivation of monogamy under tensor copies."""

from .errors import (
    CapacityError,
    ConvergenceError,
    EstimationError,
    MonogamyLabError,
    PreconditionError,
    ShapeError,
    UnsupportedInputError,
    ValidationError,
)
from .measures import (
    Convention,
    cren,
    cren_wclass_one_vs_rest,
    cren_wclass_pair,
    negativity,
    pure_negativity,
)
from .monogamy import (
    CorrelationProfile,
    PowerSolverConfig,
    critical_power,
    estimate_alpha_beta,
    is_monogamous,
    is_polygamous,
    lemma_gap,
    polygamy_power,
    residual,
    tighter_bound_multipartite,
    tighter_bound_tripartite,
)
from .states import (
    GHZClassParams,
    PureState,
    WClassParams,
    build_ghz_class,
    build_wclass,
    density,
    reduced,
    tensor_copies,
    uniform_wclass,
    w3_params,
)
from .superactivation import (
    brute_force_copy_negativity,
    copies_cren_one_vs_rest,
    copies_cren_pair,
    copies_residual,
    f_surface,
    minimal_copies,
    regularized_sequence,
)
from .tensor import (
    hermitian_eigenvalues,
    kron,
    partial_trace,
    partial_transpose,
    sqrt_trace,
    trace_norm_hermitian,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "ConvergenceError",
    "EstimationError",
    "MonogamyLabError",
    "PreconditionError",
    "ShapeError",
    "UnsupportedInputError",
    "ValidationError",
    "Convention",
    "cren",
    "cren_wclass_one_vs_rest",
    "cren_wclass_pair",
    "negativity",
    "pure_negativity",
    "CorrelationProfile",
    "PowerSolverConfig",
    "critical_power",
    "estimate_alpha_beta",
    "is_monogamous",
    "is_polygamous",
    "lemma_gap",
    "polygamy_power",
    "residual",
    "tighter_bound_multipartite",
    "tighter_bound_tripartite",
    "GHZClassParams",
    "PureState",
    "WClassParams",
    "build_ghz_class",
    "build_wclass",
    "density",
    "reduced",
    "tensor_copies",
    "uniform_wclass",
    "w3_params",
    "brute_force_copy_negativity",
    "copies_cren_one_vs_rest",
    "copies_cren_pair",
    "copies_residual",
    "f_surface",
    "minimal_copies",
    "regularized_sequence",
    "hermitian_eigenvalues",
    "kron",
    "partial_trace",
    "partial_transpose",
    "sqrt_trace",
    "trace_norm_hermitian",
]
