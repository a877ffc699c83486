"""Geometric quantities of a biased, harmonically driven two-level system.

The package computes Aharonov-Anandan phases, time-energy uncertainty
(Fubini-Study path length), quasienergies and their resonance structure for

    H(t) = -(Delta/2) sigma_x - (epsilon + A cos(omega t))/2 sigma_z,

by four routes: numerically exact one-period propagation, a
counterrotating-hybridized rotating frame, second-harmonic perturbation
theory on top of that frame, and truncated extended-space (Floquet-type)
matrices.
"""

from .model import (
    DEFAULT_POLICY,
    IDENTITY,
    ModelParams,
    NoConvergence,
    NonConvergent,
    NoRootInBracket,
    NumericPolicy,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    StepFailure,
    UnitarityLoss,
    aa_branch,
    fold_quasienergy,
    hamiltonian_at,
    principal_phase,
)
from .propagate import PropagationResult, propagate, verify_su2_structure
from .geometry import (
    BlochTrajectory,
    DegenerateCyclicStates,
    GeometricResult,
    aa_phases,
    bloch_trajectory,
    bloch_vectors,
    cyclic_decomposition,
    dynamical_phase,
    population_up,
    time_energy_uncertainty,
    unwrap_sweep,
)
from .chrw import (
    ChrwSolution,
    analytic_propagator,
    chrw_aa_symmetric,
    chrw_phases,
    cyclic_states_lab,
    rabi_frequency_2nd_order,
    resonance_position,
    solve_self_consistent,
)
from .perturbation import (
    PerturbationResult,
    SingularDenominator,
    first_order_correction,
    k_coefficients,
    k_coefficients_quadrature,
    perturbed_aa_phases,
)
from .floquet import (
    CrossingReport,
    HiddenSymmetryReport,
    SpectrumResult,
    TruncatedBlockMatrix,
    build_quantum_rabi,
    build_semiclassical_floquet,
    classify_crossings,
    converged_spectrum,
    hidden_symmetry_check,
    quasienergy_gap,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_POLICY", "IDENTITY", "SIGMA_X", "SIGMA_Y", "SIGMA_Z",
    "ModelParams", "NumericPolicy",
    "StepFailure", "UnitarityLoss", "NoConvergence", "NoRootInBracket",
    "NonConvergent", "DegenerateCyclicStates", "SingularDenominator",
    "aa_branch", "fold_quasienergy", "hamiltonian_at", "principal_phase",
    "PropagationResult", "propagate", "verify_su2_structure",
    "GeometricResult", "BlochTrajectory", "aa_phases", "bloch_trajectory",
    "bloch_vectors", "cyclic_decomposition", "dynamical_phase",
    "population_up", "time_energy_uncertainty", "unwrap_sweep",
    "ChrwSolution", "analytic_propagator", "chrw_aa_symmetric", "chrw_phases",
    "cyclic_states_lab", "rabi_frequency_2nd_order", "resonance_position",
    "solve_self_consistent",
    "PerturbationResult", "first_order_correction", "k_coefficients",
    "k_coefficients_quadrature", "perturbed_aa_phases",
    "TruncatedBlockMatrix", "SpectrumResult", "CrossingReport",
    "HiddenSymmetryReport", "build_semiclassical_floquet",
    "build_quantum_rabi", "classify_crossings", "converged_spectrum",
    "hidden_symmetry_check", "quasienergy_gap",
    "__version__",
]
