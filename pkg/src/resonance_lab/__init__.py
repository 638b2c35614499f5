"""Resonances, eigenvalues and scattering phases of circular well potentials.

The top-level namespace re-exports the working vocabulary; the modules
group by concern: cylinder functions on the log cover, the Lambert W
helper, the well/characteristic layer, root tracking, phase tables, the
1d delta benchmark, and run orchestration.
"""

from .cylinder import (
    EULER_GAMMA,
    CylinderValue,
    SurfacePoint,
    bessel_j,
    bessel_y,
    bessel_zero,
    hankel,
)
from .delta1d import DeltaSystem, delta_phase_derivative, delta_resonance
from .errors import (
    BranchError,
    CaseMismatch,
    ConfigError,
    DomainError,
    Inconclusive,
    MatchError,
    MissingInput,
    QuadratureError,
    RangeError,
    ResonanceLabError,
    SheetDriftWarning,
    SingularityError,
    StructureError,
)
from .finder import (
    Classification,
    GuessKind,
    ResonanceRecord,
    ResonanceTrack,
    SectorScan,
    Verdict,
    fit_first_correction,
    initial_guess,
    persistence_verdict,
    refine,
    sector_scan,
    thread_budget,
    track,
)
from .lambert import branch_limit_check, lambert_w
from .phase import (
    AsymptoticCase,
    CaseKind,
    PhaseTable,
    asymptotic_case_for,
    asymptotic_phase_derivative,
    breit_wigner_overlay,
    mode_tail_bound,
    phase_shift_derivative,
    scattering_phase,
    total_phase_derivative,
)
from .runs import (
    FORMAT_STAMP,
    FORMAT_VERSION,
    CsvDocument,
    RunConfig,
    RunResult,
    emit_plot_script,
    figure_jobs,
    run,
    run_figure,
)
from .well import (
    CouplingFamily,
    Well,
    ZeroEnergyClass,
    ZeroEnergyKind,
    char_q,
    char_q_scale,
    classify_zero_energy,
    mu,
    resonant_state,
    s_matrix_eigenvalue,
)

__version__ = "0.1.0"

__all__ = [
    "EULER_GAMMA",
    "CylinderValue",
    "SurfacePoint",
    "bessel_j",
    "bessel_y",
    "bessel_zero",
    "hankel",
    "DeltaSystem",
    "delta_phase_derivative",
    "delta_resonance",
    "ResonanceLabError",
    "DomainError",
    "RangeError",
    "BranchError",
    "SingularityError",
    "StructureError",
    "MatchError",
    "CaseMismatch",
    "QuadratureError",
    "MissingInput",
    "ConfigError",
    "Inconclusive",
    "SheetDriftWarning",
    "Classification",
    "GuessKind",
    "ResonanceRecord",
    "ResonanceTrack",
    "SectorScan",
    "Verdict",
    "initial_guess",
    "refine",
    "track",
    "sector_scan",
    "thread_budget",
    "persistence_verdict",
    "fit_first_correction",
    "branch_limit_check",
    "lambert_w",
    "AsymptoticCase",
    "CaseKind",
    "PhaseTable",
    "asymptotic_case_for",
    "asymptotic_phase_derivative",
    "breit_wigner_overlay",
    "mode_tail_bound",
    "phase_shift_derivative",
    "scattering_phase",
    "total_phase_derivative",
    "FORMAT_STAMP",
    "FORMAT_VERSION",
    "CsvDocument",
    "RunConfig",
    "RunResult",
    "emit_plot_script",
    "figure_jobs",
    "run",
    "run_figure",
    "CouplingFamily",
    "Well",
    "ZeroEnergyClass",
    "ZeroEnergyKind",
    "char_q",
    "char_q_scale",
    "classify_zero_energy",
    "mu",
    "resonant_state",
    "s_matrix_eigenvalue",
    "__version__",
]
