"""Exactly solvable qubit dephasing with measurement-prepared initial states.

The package computes closed-form coherence, purity and entropy
trajectories for a qubit coupled to a bosonic bath through a pure
dephasing interaction, for selective and non-selective preparation
measurements, and validates them against a truncated-Fock-space brute
force.
"""

from .bath import (
    BathSpec,
    DiscreteBath,
    DiscreteMode,
    OhmicFamily,
    QuadratureError,
    ThermalContext,
    discretize_ohmic,
    gamma_dynamical,
    phi_correlation,
)
from .bloch import (
    BlochDirection,
    QubitState,
    antipodal_direction,
    direction_unitary,
    relative_unitary,
    spin_component,
    state_from_direction,
)
from .dynamics import (
    DegenerateSchemeError,
    DephasingTrajectory,
    NonPositiveLogArgumentError,
    SchemeKernelParams,
    chi_phase,
    coherence_trajectory,
    entropy,
    gamma_cor_general,
    gamma_cor_scheme_ii,
    gamma_cor_scheme_iii,
    gamma_cor_selective,
    purity,
    scheme_kernel_params,
    selective_kernel_params,
)
from .fock import (
    CompositeDensityMatrix,
    FockMode,
    FockSystem,
    TruncationError,
    apply_preparation,
    build_equilibrium,
    coherence_exact,
    coherence_series,
)
from .preparation import (
    InitialAverages,
    NonSelectiveGeneral,
    PreparationScheme,
    Selective,
    dual_scheme,
    enhancement_predicate,
    initial_averages,
    scheme_i,
    scheme_ii,
    scheme_iii,
    scheme_iii_prime,
    scheme_operators,
    selective_from_direction,
)
from .scenario import (
    ConfigError,
    FIGURE_PRESETS,
    ScenarioConfig,
    run_figure,
    run_trace,
    write_trajectory_csv,
)

__version__ = "0.1.0"
