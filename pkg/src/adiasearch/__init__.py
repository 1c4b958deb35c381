"""Driven-path local adiabatic quantum search simulation library.

Constructs the interpolating search Hamiltonian (optionally deformed by a
driving term), analyzes its spectrum and gap, synthesizes locally
adiabatic schedules, propagates the time-dependent state exactly in the
2D invariant subspace (and densely at small n for validation), and
reproduces the runtime-vs-size scaling study.
"""

from .errors import (
    DivergentRuntimeError,
    FormulaInconsistencyError,
    InvalidArgumentError,
    NumericDegeneracyError,
    ProfileEndpointWarning,
    ResourceLimitError,
)
from .model import (
    DrivingProfile,
    EffectiveHamiltonian,
    FullHamiltonian,
    PROFILE_KINDS,
    ReducedState,
    SearchInstance,
    build_effective,
    build_full,
    custom_profile,
    endpoints_valid,
    get_profile,
    initial_state,
    make_instance,
    profile_coefficient,
)
from .spectrum import (
    GapReport,
    SpectrumPoint,
    dh_ds_matrix_element,
    drive_matrix_element,
    eigensystem,
    eigenvector_closed_form,
    gap_closed_form,
    gap_numeric,
    min_gap,
    spectrum_point,
)
from .schedule import (
    AsymptoteReport,
    RuntimeRecord,
    Schedule,
    asymptotic_runtime,
    closed_form_time,
    linear_schedule,
    local_schedule,
    rc_runtime_closed_form,
    rc_schedule,
    runtime_quadrature,
)
from .dynamics import (
    EvolutionResult,
    TrajectoryPoint,
    fidelity,
    propagate,
    propagate_full,
)
from .experiments import (
    FigureTable,
    SweepConfig,
    figure1_data,
    figure2_data,
    figure3_data,
    run_sweep,
    scaling_report,
    write_figures,
)

__version__ = "0.1.0"
