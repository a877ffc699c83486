"""Cyclic states, phases, quasienergies, uncertainty and Bloch trajectories.

Everything here is extracted from a one-period :class:`PropagationResult`.
Total phases live in (-pi, pi], AA phases are reported in [0, 2*pi), and the
quasienergies q = -theta/T are folded into [-omega/2, omega/2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .model import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    ModelParams,
    aa_branch,
    fold_quasienergy,
    hamiltonian_at,
)
from .propagate import PropagationResult

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class GeometricResult:
    """Per-branch phases, quasienergies and the time-energy uncertainty."""

    cyclic_states: np.ndarray     # shape (2, 2): rows are |psi_+(0)>, |psi_-(0)>
    total_phases: np.ndarray      # theta_+, theta_- in (-pi, pi]
    dynamical_phases: np.ndarray  # alpha_+, alpha_-
    aa_phases: np.ndarray         # gamma_+, gamma_- in [0, 2*pi)
    quasienergies: np.ndarray     # q_+, q_- folded into [-omega/2, omega/2)
    uncertainty: float            # s (equal for both branches)
    degenerate: bool


@dataclass(frozen=True)
class BlochTrajectory:
    """Bloch-vector samples of an evolving state and its accumulated length."""

    points: np.ndarray     # shape (n+1, 3), unit vectors
    path_length: float     # Fubini-Study length in radians


class DegenerateCyclicStates(UserWarning):
    """U(T) is (numerically) proportional to the identity; the cyclic basis

    and hence the AA phases are convention-dependent."""


def cyclic_decomposition(UT: np.ndarray, p: ModelParams,
                         degeneracy_tol: float = 1e-6):
    """Eigen-decompose U(T) into cyclic initial states and total phases.

    Returns (states, thetas, quasienergies, degenerate).  ``states`` has the
    "+" branch (positive principal total phase) in row 0.  When the two
    eigenvalues coincide within ``degeneracy_tol`` the decomposition is not
    unique; a canonical sigma_z eigenbasis is returned and the flag is set.
    """
    a = UT[0, 0]
    b = UT[0, 1]
    # SU(2) form guarantees eigenvalues cos(theta) +- i*sqrt(1 - cos^2)
    c = float(np.clip(np.real(a), -1.0, 1.0))
    s = np.sqrt(max(0.0, 1.0 - c * c))
    lam_p = c + 1j * s
    lam_m = c - 1j * s
    theta_p = float(np.arctan2(s, c))
    theta_m = -theta_p
    degenerate = bool(abs(lam_p - lam_m) < degeneracy_tol)

    if degenerate:
        states = np.array([[1.0, 0.0], [0.0, 1.0]], dtype=complex)
    elif abs(b) < 1e-15 and abs(np.imag(a)) >= 1e-15:
        # diagonal U(T): eigenvectors are the sigma_z basis states
        if np.imag(a) > 0:
            states = np.array([[1.0, 0.0], [0.0, 1.0]], dtype=complex)
        else:
            states = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    else:
        v_p = np.array([b, lam_p - a], dtype=complex)
        v_p /= np.linalg.norm(v_p)
        # exact orthogonal complement: the lam_m eigenvector
        v_m = np.array([-np.conj(v_p[1]), np.conj(v_p[0])], dtype=complex)
        states = np.array([v_p, v_m])

    thetas = np.array([theta_p, theta_m])
    quasi = fold_quasienergy(-thetas / p.period, p.omega)
    return states, thetas, quasi, degenerate


def _evolved_states(r: PropagationResult, state: np.ndarray) -> np.ndarray:
    """|psi(t_k)> = U(t_k)|state>, shape (n+1, 2)."""
    state = np.asarray(state, dtype=complex)
    return r.unitaries @ state


def _energy_moments(r: PropagationResult, psi: np.ndarray):
    """<H> and <H^2> along the trajectory (H^2 is proportional to identity)."""
    p = r.params
    H = hamiltonian_at(r.grid, p)
    h_exp = np.real(np.einsum("ki,kij,kj->k", np.conj(psi), H, psi))
    eps_t = p.drive(r.grid)
    h2_exp = 0.25 * (p.delta ** 2 + eps_t ** 2)
    return h_exp, h2_exp


def dynamical_phase(r: PropagationResult, state: np.ndarray,
                    p: ModelParams | None = None) -> float:
    """alpha = -int_0^T <psi|H|psi> dt by composite Simpson on the stored grid."""
    psi = _evolved_states(r, state)
    h_exp, _ = _energy_moments(r, psi)
    return float(-simpson(h_exp, x=r.grid))


def time_energy_uncertainty(r: PropagationResult, state: np.ndarray,
                            p: ModelParams | None = None) -> float:
    """s = 2 int_0^T sqrt(<H^2> - <H>^2) dt (hbar = 1)."""
    psi = _evolved_states(r, state)
    h_exp, h2_exp = _energy_moments(r, psi)
    var = np.maximum(h2_exp - h_exp ** 2, 0.0)
    return float(2.0 * simpson(np.sqrt(var), x=r.grid))


def population_up(r: PropagationResult, state: np.ndarray) -> np.ndarray:
    """P_up(t_k) = |<up|U(t_k)|state>|^2; returns shape (n+1, 2) of (t, P_up)."""
    psi = _evolved_states(r, state)
    pup = np.abs(psi[:, 0]) ** 2
    return np.column_stack([r.grid, pup])


def bloch_vectors(psi: np.ndarray) -> np.ndarray:
    """Pauli expectation values for a batch of normalized 2-vectors."""
    sx = np.real(np.einsum("ki,ij,kj->k", np.conj(psi), SIGMA_X, psi))
    sy = np.real(np.einsum("ki,ij,kj->k", np.conj(psi), SIGMA_Y, psi))
    sz = np.real(np.einsum("ki,ij,kj->k", np.conj(psi), SIGMA_Z, psi))
    return np.column_stack([sx, sy, sz])


def _chord_length(points: np.ndarray, stride: int = 1) -> float:
    pts = points[::stride]
    chords = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    return float(np.sum(2.0 * np.arcsin(np.clip(0.5 * chords, -1.0, 1.0))))


def bloch_trajectory(r: PropagationResult, state: np.ndarray) -> BlochTrajectory:
    """Trajectory on the Bloch sphere and its great-circle path length.

    The discrete chord sum has an O(h^2) deficit; one Richardson step against
    the half-resolution sum removes it.
    """
    psi = _evolved_states(r, state)
    pts = bloch_vectors(psi)
    full = _chord_length(pts, 1)
    half = _chord_length(pts, 2)
    length = full + (full - half) / 3.0
    return BlochTrajectory(points=pts, path_length=length)


def aa_phases(r: PropagationResult, p: ModelParams | None = None,
              reference_states: np.ndarray | None = None) -> GeometricResult:
    """All geometric quantities of one period in a single record.

    ``reference_states`` (optional, rows |ref_+>, |ref_->) relabels the two
    branches by maximal overlap, e.g. to match an analytic branch choice or to
    keep continuity along a parameter sweep.
    """
    p = p or r.params
    UT = r.unitaries[-1]
    states, thetas, quasi, degenerate = cyclic_decomposition(
        UT, p, r.policy.degeneracy_tol)

    if reference_states is not None and not degenerate:
        ref = np.asarray(reference_states, dtype=complex)
        if abs(np.vdot(ref[0], states[0])) < abs(np.vdot(ref[0], states[1])):
            states = states[::-1]
            thetas = thetas[::-1]
            quasi = quasi[::-1]

    alphas = np.array([dynamical_phase(r, st) for st in states])
    gamma_p = aa_branch(thetas[0] - alphas[0])
    # reporting convention: the two branches are complementary to 2*pi
    gamma_m = TWO_PI - gamma_p if gamma_p != 0.0 else 0.0
    s = time_energy_uncertainty(r, states[0])
    return GeometricResult(
        cyclic_states=states,
        total_phases=thetas,
        dynamical_phases=alphas,
        aa_phases=np.array([gamma_p, gamma_m]),
        quasienergies=quasi,
        uncertainty=s,
        degenerate=degenerate,
    )


def unwrap_sweep(values: np.ndarray, period: float = TWO_PI) -> np.ndarray:
    """Remove jumps of ``period`` along a swept 1-D sequence of phases."""
    vals = np.asarray(values, dtype=float).copy()
    offset = 0.0
    out = np.empty_like(vals)
    out[0] = vals[0]
    for k in range(1, len(vals)):
        step = vals[k] + offset - out[k - 1]
        if step > period / 2:
            offset -= period * np.round(step / period)
        elif step < -period / 2:
            offset += period * np.round(-step / period)
        out[k] = vals[k] + offset
    return out
