"""Coarse Ricci curvature of finite metric measure spaces.

Builds random-walk kernels on finite metric spaces, computes
1-Wasserstein distances exactly (network simplex with a certified
dual), derives coarse curvature for point pairs, and checks the
numbers against comparison-geometry bounds: ball-volume growth,
model-space walk bounds, and the spectral bracket for the walk
Laplacian.
"""

from .curvature import CurvatureReport, kappa, kappa_all_pairs, kappa_sampled
from .errors import (
    CoarseCurvError,
    DomainError,
    EmptyNeighborhoodError,
    InvalidKernelError,
    InvalidParameterError,
    InvalidRadiusError,
    InvalidSpaceError,
    NotLipschitzError,
    OutOfRegimeError,
    SolverError,
    UnbalancedMarginalsError,
    UndefinedPairError,
)
from .experiments import EXPERIMENTS, ExperimentResult, run_experiment
from .fileio import (
    kernel_from_dict,
    kernel_to_dict,
    load_kernel,
    load_space,
    save_kernel,
    save_space,
    space_from_dict,
    space_to_dict,
)
from .modelbounds import (
    ModelBoundParams,
    VolumeGrowthReport,
    check_ball_difference,
    check_bishop_gromov,
    domain_cap,
    heat_curvature_bound,
    model_ball_volume,
    model_warp,
    walk_curvature_bound,
)
from .samplers import (
    GeneratorSpec,
    cc_distance,
    cc_norm,
    complete_graph,
    cycle_graph,
    euclidean_ball_sample,
    euclidean_grid,
    generate,
    heisenberg_inv,
    heisenberg_mul,
    heisenberg_sample,
    hypercube_graph,
    hyperbolic_sample,
    koranyi_norm,
    path_graph,
    random_space,
    random_stochastic_kernel,
    sphere_sample,
)
from .spaces import (
    BallIndex,
    FiniteMetricMeasureSpace,
    RandomWalkKernel,
    SpaceValidationReport,
    delta_walk,
    gaussian_walk,
    make_kernel,
    make_space,
    neighbor_uniform_walk,
    open_ball,
    r_step_walk,
    validate_space,
)
from .spectral import (
    BracketVerdict,
    LiouvilleVerdict,
    SpectrumReport,
    check_bracket,
    laplacian,
    liouville_check,
    spectrum,
)
from .transport import (
    Coupling,
    CouplingValidationReport,
    TransportResult,
    kr_dual_value,
    naive_ball_transport_bound,
    validate_coupling,
    w1_exact,
)

__version__ = "0.1.0"

__all__ = [
    "BallIndex",
    "BracketVerdict",
    "CoarseCurvError",
    "Coupling",
    "CouplingValidationReport",
    "CurvatureReport",
    "DomainError",
    "EXPERIMENTS",
    "EmptyNeighborhoodError",
    "ExperimentResult",
    "FiniteMetricMeasureSpace",
    "GeneratorSpec",
    "InvalidKernelError",
    "InvalidParameterError",
    "InvalidRadiusError",
    "InvalidSpaceError",
    "LiouvilleVerdict",
    "ModelBoundParams",
    "NotLipschitzError",
    "OutOfRegimeError",
    "RandomWalkKernel",
    "SolverError",
    "SpaceValidationReport",
    "SpectrumReport",
    "TransportResult",
    "UnbalancedMarginalsError",
    "UndefinedPairError",
    "VolumeGrowthReport",
    "cc_distance",
    "cc_norm",
    "check_ball_difference",
    "check_bishop_gromov",
    "check_bracket",
    "complete_graph",
    "cycle_graph",
    "delta_walk",
    "domain_cap",
    "euclidean_ball_sample",
    "euclidean_grid",
    "gaussian_walk",
    "generate",
    "heat_curvature_bound",
    "heisenberg_inv",
    "heisenberg_mul",
    "heisenberg_sample",
    "hypercube_graph",
    "hyperbolic_sample",
    "kappa",
    "kappa_all_pairs",
    "kappa_sampled",
    "kernel_from_dict",
    "kernel_to_dict",
    "koranyi_norm",
    "kr_dual_value",
    "laplacian",
    "liouville_check",
    "load_kernel",
    "load_space",
    "make_kernel",
    "make_space",
    "model_ball_volume",
    "model_warp",
    "naive_ball_transport_bound",
    "neighbor_uniform_walk",
    "open_ball",
    "path_graph",
    "r_step_walk",
    "random_space",
    "random_stochastic_kernel",
    "run_experiment",
    "save_kernel",
    "save_space",
    "space_from_dict",
    "space_to_dict",
    "spectrum",
    "sphere_sample",
    "validate_coupling",
    "validate_space",
    "w1_exact",
    "walk_curvature_bound",
]
