"""1D wave solver for linear elastic materials with microstructure.

A macroscopic displacement u and a microdeformation chi evolve under a
coupled pair of second-order wave equations.  The package provides the
closed-form trigonometric solutions, a first-order Riemann-invariant
reformulation with unambiguous boundary slots, a WENO5 + SSP-RK3 solver,
grid-convergence verification against the exact modes, and a two-material
strain-pulse experiment, all behind a CLI emitting CSV (and optional
figures).
"""

from .boundary import (
    BoundaryHistory,
    BoundaryRegime,
    RegimeKind,
    apply_regime,
    excitation_eps,
    inflow_v,
)
from .config import (
    DEFAULT_PARAMS,
    ConfigError,
    RunKind,
    SimConfig,
    WaveSpec,
    parse_config,
    parse_omega,
    waves_for_benchmark,
)
from .driver import (
    ErrorReport,
    Snapshot,
    build_exact_solution,
    convergence_study,
    format_convergence_table,
    initial_state_from_exact,
    mixed_relative_error,
    read_snapshot,
    run_exact_verification,
    run_inhomogeneous,
    write_convergence_csv,
    write_snapshot,
    write_waterfall_csv,
)
from .exact import (
    ExactFields,
    ExactMode,
    ExactSolution,
    Family,
    characteristic_roots,
    eval_solution,
    make_mode,
    mode_time_amplitudes,
)
from .material import (
    DerivedCoefficients,
    InvalidParameterError,
    MaterialParams,
    ParameterProfile,
    SampledProfile,
    bump_profile,
    bump_profile_dx,
    bump_profile_dxx,
    derive_coefficients,
    sample_profile,
    total_energy,
    validate_params,
)
from .riemann import (
    GaugeFields,
    Grid,
    State,
    build_gauge_constant,
    build_gauge_variable,
    forward_transform,
    inverse_transform,
    rhs,
)
from .timestepping import BlowUpError, StepControl, compute_dt, rk3_step
from .weno import (
    GHOST,
    PaddedField,
    StencilDirection,
    derivative_from_padded,
    fill_ghosts,
    weno5_derivative,
)

__version__ = "0.1.0"
