"""Gaussian-state simulation of inseparability measurement on bright twin beams.

The package models a bright two-mode squeezed source, wave-plate mode
mixing, direct (photodiode) detection of both polarizing-beam-splitter
ports, and the RF sum/difference currents whose normalized variances form
the two-mode inseparability witness — all without any phase-locked local
oscillator.  A Monte Carlo sampler cross-checks the linearized detection
model against exact per-sample photon fluxes.
"""

from .criteria import DUAN_BOUND, CriterionReport, duan_from_currents, duan_sum, variance_db
from .detection import (
    BRIGHTNESS_THRESHOLD,
    LinearizationWarning,
    LinearObservable,
    current_diff,
    current_sum,
    current_variance,
    direct_detect,
    homodyne_variance,
    pull_back,
    rf_split,
)
from .gaussian import (
    PHYSICALITY_TOL,
    SYMMETRY_TOL,
    SYMPLECTIC_TOL,
    GaussianState,
    ModeRegistry,
    PhysicalityReport,
    SymplecticOp,
    apply,
    check_physicality,
    compose,
    displace,
    extend_with_vacuum,
    new_vacuum,
    quadrature_variance,
    symplectic_deviation,
    symplectic_eigenvalues,
    symplectic_form,
)
from .montecarlo import McConfig, McReport, mc_current_variance, mc_photon_stats, sample_wigner
from .optics import (
    PumpPhase,
    SourceSpec,
    WavePlateKind,
    WavePlateSpec,
    bright_pair,
    half_wave_plate,
    hwp,
    jones_to_symplectic,
    loss_channel,
    measurement_chain,
    nopa_source,
    pbs,
    phase_shift,
    quarter_wave_plate,
    qwp,
)
from .scenarios import (
    SCHEMA_VERSION,
    SWEEPABLE,
    CheckResult,
    DemoReport,
    ResultRecord,
    ScenarioConfig,
    detected_state,
    noisy_source_state,
    random_circuit_state,
    random_plate_op,
    run_demo,
    run_point,
    run_sweep,
    run_validate,
)

__version__ = "0.1.0"
