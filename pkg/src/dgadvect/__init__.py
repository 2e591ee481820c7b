"""Discontinuous Galerkin transport on periodic 1D grids, with the spectral
and superconvergence diagnostics needed to verify its error structure."""

from .basis import (
    Grid,
    QuadratureRule,
    ScaledBasis,
    gauss_rule,
    legendre_eval,
    make_grid,
    radau_right_poly,
)
from .errors import (
    AsymptoticPrediction,
    ConvergenceTable,
    ErrorDecomposition,
    ExactSolution,
    FourierNorms,
    NormReport,
    Problem,
    TransientSeries,
    asymptotic_error,
    asymptotic_error_system,
    combined_l2,
    convergence_study,
    decompose_error,
    downwind_norms,
    fitted_order,
    fourier_norms,
    initialize_state,
    norms,
    run_experiment,
    transient_profile,
)
from .fields import (
    AbsSinPowerField,
    DerivativeOrderError,
    FactoredBumpField,
    LinearCombinationField,
    PeriodicPolyField,
    SmoothField,
    SpectralField,
    TrigField,
)
from .presets import PRESET_NAMES, make_preset
from .projections import (
    CorrectionSet,
    DGState,
    correction_functions,
    gauss_radau_project,
    l2_project,
    project_components,
    special_interpolant,
)
from .solver import (
    AdvectionSystem,
    FluxConfigError,
    FluxSpec,
    IntegratorConfig,
    RKTableau,
    characteristic_decompose,
    characteristic_recompose,
    discrete_energy,
    energy_rate,
    integrate,
    integrate_checkpoints,
    interface_jumps,
    lax_friedrichs,
    register_tableau,
    rhs,
    upwind,
)
from .symbol import (
    DeviationReport,
    EigenSystem,
    ExpansionFit,
    NonDiagonalizableModeError,
    SpectralGap,
    StabilityViolation,
    SymbolMatrix,
    asymptotic_constant,
    build_symbol,
    dissipation_factor,
    eigendecompose,
    eigvec_deviation,
    mode_projection,
    pade_check,
    pade_exp_coefficients,
    physical_eigenvalue,
    spectral_gap,
    spectrum_sweep,
    symbol_from_theta,
    verify_lambda0_expansion,
)

__version__ = "0.1.0"
