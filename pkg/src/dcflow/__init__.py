"""Explicit finite-difference solver, diagnostics, and convergence harness
for a quasilinear curvature flow of graphs with a length-coupled drift term.
"""
from ._kernels import backend_name
from .convergence import (
    ConvergenceReport,
    ConvergenceRow,
    choose_time_step,
    compute_rates,
    refinement_study,
)
from .diagnostics import (
    DiagnosticsRecord,
    area_decay_margin,
    check_dtdplus_identity,
    check_length_monotone,
    dtdplus_coefficients,
    fit_decay_rate,
    graphicality_constant,
    record,
)
from .mesh import (
    GridSpec,
    MeshProfile,
    d_minus,
    d_plus,
    d_second,
    d_zero,
    discrete_area,
    discrete_length,
    dplus_sup_norm,
    restrict,
    sup_norm,
)
from .profiles import (
    ProfileError,
    ProfileSpec,
    build_profile,
    bump_profile,
    inflection_profile,
    load_experimental,
    validate_profile,
)
from .solver import (
    SolverState,
    StabilityError,
    StabilityReport,
    dt_interior,
    run,
    step,
    validate_stability,
)

__version__ = "0.1.0"
