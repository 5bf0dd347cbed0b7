"""Linear semi-infinite programming over [0, 2pi] by moment reduction.

The pipeline: sample the constraint rows, truncate their Fourier
expansions at order K, impose the Toeplitz positive-semidefiniteness
characterization of trigonometric moment sequences, and solve the
resulting semidefinite program with a self-contained interior-point
method.  A cutting-plane baseline and dense-grid LPs provide
independent routes to the same values.
"""

from .cutting_plane import CuttingPlaneParams, most_violated_point, solve_cutting_plane
from .instances import (
    REFERENCE_OPTIMA,
    EvaluationGrid,
    SipInstance,
    builtin_example,
    builtin_registry,
    constraint_margin,
    constraint_violation,
    load_instance,
)
from .reduction import (
    EmbeddedLmi,
    MomentLmi,
    build_complex_moment_program,
    build_real_moment_program,
    embed_hermitian,
    skew_from_moments,
    toeplitz_from_moments,
)
from .reports import ConvergenceSeries, SolveReport, render_compare, render_convergence
from .sdp import (
    SdpProblem,
    SdpSolution,
    min_eigenvalue,
    solve_lp,
    solve_sdp,
)
from .spectral import (
    FourierTable,
    default_sample_count,
    dft_coefficients,
    fourier_table,
    reflect_even,
    truncated_rows,
)
from .validation import (
    CrossCheck,
    GridLpResult,
    convergence_study,
    cross_check,
    grid_lp_report,
    grid_lp_value,
    solve_moment,
)

__version__ = "0.1.0"

__all__ = [
    "CuttingPlaneParams",
    "most_violated_point",
    "solve_cutting_plane",
    "REFERENCE_OPTIMA",
    "EvaluationGrid",
    "SipInstance",
    "builtin_example",
    "builtin_registry",
    "constraint_margin",
    "constraint_violation",
    "load_instance",
    "EmbeddedLmi",
    "MomentLmi",
    "build_complex_moment_program",
    "build_real_moment_program",
    "embed_hermitian",
    "skew_from_moments",
    "toeplitz_from_moments",
    "ConvergenceSeries",
    "SolveReport",
    "render_compare",
    "render_convergence",
    "SdpProblem",
    "SdpSolution",
    "min_eigenvalue",
    "solve_lp",
    "solve_sdp",
    "FourierTable",
    "default_sample_count",
    "dft_coefficients",
    "fourier_table",
    "reflect_even",
    "truncated_rows",
    "CrossCheck",
    "GridLpResult",
    "convergence_study",
    "cross_check",
    "grid_lp_report",
    "grid_lp_value",
    "solve_moment",
    "__version__",
]
