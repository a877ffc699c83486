"""Model definition for the biased, harmonically driven two-level system.

The lab-frame Hamiltonian is

    H(t) = -(Delta/2) sigma_x - (epsilon + A cos(omega t))/2 sigma_z,

with hbar = 1.  Energies are conveniently quoted in units of omega; nothing
below assumes omega = 1, though.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)

TWO_PI = 2.0 * np.pi


class StepFailure(RuntimeError):
    """Propagation step controller could not meet the requested tolerance."""


class UnitarityLoss(RuntimeError):
    """Propagated unitary drifted beyond the allowed unitarity defect."""


class NoConvergence(RuntimeError):
    """Self-consistent solver failed to reach the residual tolerance."""


class NoRootInBracket(RuntimeError):
    """Root condition has no sign change inside the search interval."""


class NonConvergent(RuntimeError):
    """Truncated-matrix spectrum did not converge at the maximum size."""


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters (tunneling, static bias, drive amplitude/frequency)."""

    delta: float
    epsilon: float
    amplitude: float
    omega: float = 1.0

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError("omega must be positive")
        if self.delta < 0:
            raise ValueError("delta must be non-negative")
        if self.amplitude < 0:
            raise ValueError("amplitude must be non-negative")
        if self.epsilon < 0:
            raise ValueError("epsilon must be non-negative")

    @property
    def period(self) -> float:
        return TWO_PI / self.omega

    def drive(self, t):
        """Instantaneous bias epsilon + A cos(omega t); accepts arrays."""
        return self.epsilon + self.amplitude * np.cos(self.omega * np.asarray(t))


@dataclass(frozen=True)
class NumericPolicy:
    """Tolerances and grid density shared across the numeric routines."""

    step_tol: float = 1e-12
    quad_points: int = 4096
    unitarity_tol: float = 1e-10
    root_tol: float = 1e-12
    degeneracy_tol: float = 1e-6
    spectrum_tol: float = 1e-8
    singular_tol: float = 1e-3

    def __post_init__(self):
        for name in ("step_tol", "unitarity_tol", "root_tol", "degeneracy_tol",
                     "spectrum_tol", "singular_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.quad_points < 256:
            raise ValueError("quad_points must be at least 256")


DEFAULT_POLICY = NumericPolicy()


def hamiltonian_at(t, p: ModelParams) -> np.ndarray:
    """H(t) = -(Delta/2) sigma_x - (epsilon + A cos(omega t))/2 sigma_z.

    ``t`` may be a scalar (returns a 2x2 array) or a 1-D array of times
    (returns shape (n, 2, 2)).
    """
    t = np.asarray(t, dtype=float)
    eps_t = p.drive(t)
    hx = np.full_like(eps_t, -0.5 * p.delta)
    hz = -0.5 * eps_t
    out = hx[..., None, None] * SIGMA_X + hz[..., None, None] * SIGMA_Z
    return out


def rotated_frame_hamiltonian(t, p: ModelParams) -> np.ndarray:
    """Fixed y-rotated frame: -(Delta/2) sigma_z + (epsilon + A cos(omega t))/2 sigma_x."""
    t = np.asarray(t, dtype=float)
    eps_t = p.drive(t)
    hz = np.full_like(eps_t, -0.5 * p.delta)
    hx = 0.5 * eps_t
    return hz[..., None, None] * SIGMA_Z + hx[..., None, None] * SIGMA_X


def principal_phase(phi):
    """Map a phase (or array of phases) into (-pi, pi]."""
    out = np.mod(np.asarray(phi, dtype=float) + np.pi, TWO_PI) - np.pi
    out = np.where(out == -np.pi, np.pi, out)
    if out.ndim == 0:
        return float(out)
    return out


def aa_branch(phi):
    """Map a phase into the [0, 2*pi) reporting interval used for AA phases."""
    out = np.mod(np.asarray(phi, dtype=float), TWO_PI)
    out = np.where(out >= TWO_PI, 0.0, out)  # mod can round up to the period
    if out.ndim == 0:
        return float(out)
    return out


def fold_quasienergy(q, omega: float):
    """Fold a quasienergy (or array) into [-omega/2, omega/2)."""
    out = np.mod(np.asarray(q, dtype=float) + 0.5 * omega, omega)
    out = np.where(out >= omega, 0.0, out) - 0.5 * omega
    if out.ndim == 0:
        return float(out)
    return out
