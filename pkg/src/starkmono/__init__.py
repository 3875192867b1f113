"""Magnetically charged hydrogen Stark states: numerics and beam simulation."""

from .dynamics import MixedPair, charge_evolution, charge_series, mixed_amplitudes, transition_frequency
from .errors import (
    DomainError,
    NumericalError,
    ResolutionError,
    StringSingularityError,
    ValidityError,
)
from .experiment import (
    BeamSpec,
    FieldRegion,
    RingDetector,
    Trajectory,
    beam_separation,
    dual_lorentz_force,
    excitation_check,
    integrate_trajectory,
    ring_flux_event,
    squid_signal,
)
from .monopole import (
    DipoleVector,
    DressedState,
    MagneticCharge,
    Measure,
    StarkConfig,
    dipole_from_magnetic_current,
    dirac_charge,
    dressed_wavefunction,
    electric_dipole_conventional,
    identity_residual,
    magnetic_current,
    phase_term_expectation,
    solve_magnetic_charge,
    stark_shift_conventional,
    stark_shift_monopole,
    string_singularity,
)
from .parabolic import (
    ParabolicPoint,
    QuadratureRule,
    QuantumNumbers,
    apply_h0,
    bound_energy,
    integrate,
    overlap,
    parabolic_wavefunction,
)
from .units import Constants, UnitSystem, make_unit_system, photon_energy

__version__ = "0.1.0"

__all__ = [
    "BeamSpec", "Constants", "DipoleVector", "DomainError", "DressedState", "FieldRegion",
    "MagneticCharge", "Measure", "MixedPair", "NumericalError", "ParabolicPoint",
    "QuadratureRule", "QuantumNumbers", "ResolutionError", "RingDetector", "StarkConfig",
    "StringSingularityError", "Trajectory", "UnitSystem", "ValidityError", "apply_h0",
    "beam_separation", "bound_energy", "charge_evolution", "charge_series",
    "dipole_from_magnetic_current", "dirac_charge", "dressed_wavefunction",
    "dual_lorentz_force", "electric_dipole_conventional", "excitation_check",
    "identity_residual", "integrate", "integrate_trajectory", "magnetic_current",
    "make_unit_system", "mixed_amplitudes", "overlap", "parabolic_wavefunction",
    "phase_term_expectation", "photon_energy", "ring_flux_event", "solve_magnetic_charge",
    "squid_signal", "stark_shift_conventional", "stark_shift_monopole", "string_singularity",
    "transition_frequency",
]
