"""Steering a central spin by repeatedly dephasing it.

A spin-1/2 probe exchanges polarization with a small bath of identical
spin-1/2 nuclei.  Interrupting the coherent exchange with projective-style
dephasing pulses heats, cools, or freezes the probe polarization depending
on the pulse spacing; the subpackages cover exact simulation (sector and
full product space), closed-form predictions, and CSV-producing run specs.
"""

from .core import (
    COUPLINGS,
    HZ_AS_RAD,
    TWO_PI,
    FullState,
    InconsistentStateError,
    SectorLabel,
    SectorState,
    SystemConfig,
    bath_population,
    bath_sectors,
    initial_full_state,
    initial_sector_ensemble,
    initial_state,
    polarization,
    qubit_population,
)
from .hamiltonians import (
    FULL,
    Propagator,
    SectorSpectrum,
    build_hamiltonian,
    propagate,
    sector_spectra,
    transfer_coefficients,
)
from .dephasing import (
    FIXED,
    RANDOM,
    GradientEnsemble,
    GradientModel,
    dephase_gradient,
    dephase_ideal,
    dephase_s_only,
    gradient_draw,
)
from .analytics import (
    BlockRecursion,
    QuasiEquilibrium,
    block_recursion,
    eps_free,
    eps_measured,
    eps_quasi_equilibrium,
    stretched_weight_sum,
    x_after_n,
)
from .experiment import (
    ENGINES,
    SECTOR,
    Schedule,
    SweepResult,
    Trajectory,
    reheating_probe,
    run,
    steps_to_plateau,
    sweep_tau,
)
from .runspec import (
    ParseError,
    RunSpec,
    ValidationError,
    build_schedule,
    emit,
    emit_csv,
    emit_sweep_csv,
    execute,
    parse_runspec,
    serialize_runspec,
    sweep_grid,
)

__version__ = "0.1.0"

__all__ = [
    "BlockRecursion",
    "COUPLINGS",
    "ENGINES",
    "FIXED",
    "FULL",
    "FullState",
    "GradientEnsemble",
    "GradientModel",
    "HZ_AS_RAD",
    "InconsistentStateError",
    "ParseError",
    "Propagator",
    "QuasiEquilibrium",
    "RANDOM",
    "RunSpec",
    "SECTOR",
    "Schedule",
    "SectorLabel",
    "SectorSpectrum",
    "SectorState",
    "SweepResult",
    "SystemConfig",
    "TWO_PI",
    "Trajectory",
    "ValidationError",
    "bath_population",
    "bath_sectors",
    "block_recursion",
    "build_hamiltonian",
    "build_schedule",
    "dephase_gradient",
    "dephase_ideal",
    "dephase_s_only",
    "emit",
    "emit_csv",
    "emit_sweep_csv",
    "eps_free",
    "eps_measured",
    "eps_quasi_equilibrium",
    "execute",
    "gradient_draw",
    "initial_full_state",
    "initial_sector_ensemble",
    "initial_state",
    "parse_runspec",
    "polarization",
    "propagate",
    "qubit_population",
    "reheating_probe",
    "run",
    "sector_spectra",
    "serialize_runspec",
    "steps_to_plateau",
    "stretched_weight_sum",
    "sweep_grid",
    "sweep_tau",
    "transfer_coefficients",
    "x_after_n",
]
