"""Low-energy S-wave scattering off central potentials in 2D and 3D.

Phase shifts by asymptotic matching and by the phase-function method,
zero-energy scattering lengths, effective ranges with divergence
detection, admissibility conditions on the potential, and the
anomalous low-energy laws for power-law tails.

Natural units throughout: 2m/hbar^2 = 1, lengths in an arbitrary unit
L, momenta in 1/L.
"""

from .effective_range import (
    Anomaly,
    EffectiveRangeReport,
    anomalous_residual_2d,
    effective_range,
    fit_anomaly,
)
from .potentials import ConditionReport, Potential, check_conditions, evaluate
from .radial_solver import (
    PhaseShiftResult,
    RadialSolution,
    phase_shift_by_matching,
    regular_solution,
)
from .specfun import (
    EULER_GAMMA,
    SpecialValue,
    bessel_j0,
    bessel_j1,
    bessel_moment,
    bessel_remainder,
    bessel_y0,
    bessel_y1,
    gamma_real,
)
from .variable_phase import PhaseFunction, phase_function, phase_shift_variable_phase
from .zero_energy import (
    ZERO_ENERGY_RESONANCE,
    ZeroEnergyReport,
    born_phase_shift,
    bound_state_count,
    critical_coupling,
    low_energy_limit_check,
    scattering_coefficients,
    scattering_length_2d,
    scattering_length_3d,
    weak_coupling_scattering_length,
    zero_energy_report,
    zero_energy_solution,
)

__version__ = "0.1.0"

__all__ = [
    "Anomaly",
    "ConditionReport",
    "EffectiveRangeReport",
    "EULER_GAMMA",
    "PhaseFunction",
    "PhaseShiftResult",
    "Potential",
    "RadialSolution",
    "SpecialValue",
    "ZERO_ENERGY_RESONANCE",
    "ZeroEnergyReport",
    "anomalous_residual_2d",
    "bessel_j0",
    "bessel_j1",
    "bessel_moment",
    "bessel_remainder",
    "bessel_y0",
    "bessel_y1",
    "born_phase_shift",
    "bound_state_count",
    "check_conditions",
    "critical_coupling",
    "effective_range",
    "evaluate",
    "fit_anomaly",
    "gamma_real",
    "low_energy_limit_check",
    "phase_function",
    "phase_shift_by_matching",
    "phase_shift_variable_phase",
    "regular_solution",
    "scattering_coefficients",
    "scattering_length_2d",
    "scattering_length_3d",
    "weak_coupling_scattering_length",
    "zero_energy_report",
    "zero_energy_solution",
]
