"""First-order correction from the second-harmonic terms of the rotating frame.

The second-harmonic Hamiltonian discarded by the first-harmonic truncation is
reinstated perturbatively.  Its three pseudo-spin components each correct the
one-period propagator by a term proportional to (delta_det tau_x - A_t tau_z),
parameterized by the dimensionless coefficients ky, kx, kz below.  The summed
coefficient k feeds the corrected cyclic state, total phase, Rabi frequency
and AA phases.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.special import j1, jv

from .model import ModelParams, SIGMA_X, SIGMA_Y, SIGMA_Z, hamiltonian_at
from .chrw import ChrwSolution, analytic_propagator, diagonalizer

TAU_X = SIGMA_X
TAU_Y = SIGMA_Y
TAU_Z = SIGMA_Z

TWO_PI = 2.0 * np.pi


class SingularDenominator(UserWarning):
    """Modulated Rabi frequency is close to a resonant denominator zero."""


@dataclass(frozen=True)
class PerturbationResult:
    """Correction coefficients and the quantities rebuilt from them."""

    solution: ChrwSolution
    ky: float
    kx: float
    kz: float
    k: float
    mu: float          # xi*u - zeta*v
    nu: float          # xi*v + zeta*u
    p_coeff: float     # (v^2 - u^2) zeta - 2 xi u v
    q_coeff: float     # (v^2 - u^2) xi + 2 u v zeta
    L: float           # cyclic-state normalization
    theta_pt: float    # corrected total phase (+ branch)
    Omega_pt: float    # corrected Rabi frequency near the third harmonic
    gamma_pt: np.ndarray  # corrected AA phases (+, -), unwrapped
    singular_flags: dict


def _k_denominators(sol: ChrwSolution):
    w = sol.params.omega
    Om = sol.Omega_t
    quartic = 9 * w ** 4 - 10 * w ** 2 * Om ** 2 + Om ** 4  # (Om^2-w^2)(Om^2-9w^2)
    quadratic = Om ** 2 - 4 * w ** 2
    return quartic, quadratic


def singular_flags(sol: ChrwSolution, singular_tol: float = 1e-3) -> dict:
    """Proximity of Omega_t to the resonant denominators at omega, 2w, 3w."""
    w = sol.params.omega
    return {
        "near_omega": bool(abs(sol.Omega_t - w) < singular_tol * w),
        "near_2omega": bool(abs(sol.Omega_t - 2 * w) < singular_tol * w),
        "near_3omega": bool(abs(sol.Omega_t - 3 * w) < singular_tol * w),
    }


def k_coefficients(sol: ChrwSolution):
    """Closed-form (ky, kx, kz) of the three second-harmonic components."""
    p = sol.params
    w = p.omega
    Om, dd, At = sol.Omega_t, sol.delta_det, sol.A_t
    xi, zeta, x, z = sol.xi, sol.zeta, sol.x, sol.z
    u, v = sol.u, sol.v
    if x == 0.0:
        return 0.0, 0.0, 0.0
    quartic, quadratic = _k_denominators(sol)
    num = p.delta * xi - p.epsilon * zeta
    q_coeff = (v * v - u * u) * xi + 2 * u * v * zeta
    p_coeff = (v * v - u * u) * zeta - 2 * xi * u * v

    ky = (2 * p.amplitude * zeta * w * j1(z) *
          (3 * w ** 2 + 2 * dd * w - Om ** 2)) / (x * quartic)
    kx = (2 * num * jv(2, z) / (x * x) * q_coeff *
          (3 * w ** 3 + 5 * w ** 2 * dd + w * Om ** 2 - dd * Om ** 2) / quartic)
    kz = -(2 * num * jv(2, z) / (x * x)) * At * (2 * xi * u * v +
          zeta * (u * u - v * v)) / quadratic
    return float(ky), float(kx), float(kz)


def _second_harmonic_components(sol: ChrwSolution, t: np.ndarray):
    """The three tau components of the frame second-harmonic Hamiltonian."""
    p = sol.params
    xi, zeta, x, z = sol.xi, sol.zeta, sol.x, sol.z
    u, v = sol.u, sol.v
    num = p.epsilon * zeta - p.delta * xi
    q_coeff = (v * v - u * u) * xi + 2 * u * v * zeta
    p_coeff = (v * v - u * u) * zeta - 2 * xi * u * v
    gy = -(p.amplitude * zeta / (2 * x)) * j1(z) * np.sin(2 * p.omega * t)
    gx = (num / (x * x)) * jv(2, z) * q_coeff * np.cos(2 * p.omega * t)
    gz = (num / (x * x)) * jv(2, z) * p_coeff * np.cos(2 * p.omega * t)
    return gy, gx, gz


def correction_matrices_quadrature(sol: ChrwSolution, n_points: int = 4096):
    """Oracle: the three one-period correction matrices by direct quadrature.

    Evaluates -i U(T) int_0^T U^-1 H2_i U dt with the closed-form frame
    propagator; independent of the closed-form k coefficients.
    """
    p = sol.params
    t = np.linspace(0.0, p.period, n_points + 1)
    U = analytic_propagator(sol, t=t)
    Udag = np.conj(np.transpose(U, (0, 2, 1)))
    gy, gx, gz = _second_harmonic_components(sol, t)
    UT = analytic_propagator(sol, t=p.period)
    out = []
    for g, tau in ((gy, TAU_Y), (gx, TAU_X), (gz, TAU_Z)):
        integrand = g[:, None, None] * (Udag @ tau @ U)
        integral = simpson(integrand, x=t, axis=0)
        out.append(-1j * UT @ integral)
    return out


def k_coefficients_quadrature(sol: ChrwSolution, n_points: int = 4096):
    """Extract (ky, kx, kz) from the quadrature oracle matrices.

    Each correction matrix equals i k sin(Omega_t T/2)/Omega_t
    (delta_det tau_x - A_t tau_z); k is recovered by projection.
    """
    Om, dd, At = sol.Omega_t, sol.delta_det, sol.A_t
    T = sol.params.period
    basis = 1j * np.sin(0.5 * Om * T) / Om * (dd * TAU_X - At * TAU_Z)
    norm2 = np.real(np.sum(np.conj(basis) * basis))
    ks = []
    for mat in correction_matrices_quadrature(sol, n_points):
        ks.append(float(np.real(np.sum(np.conj(basis) * mat)) / norm2))
    return tuple(ks)


def perturbed_total_phase(k: float, sol: ChrwSolution) -> float:
    """theta_+' = arctan(sqrt(1+k^2) tan(Omega_t T/2)) - omega T/2.

    The arctan branch is matched continuously to the unperturbed total phase
    (Omega_t - omega) T/2, which it must approach as k -> 0.
    """
    p = sol.params
    T = p.period
    half = 0.5 * sol.Omega_t * T
    base = np.arctan(np.sqrt(1.0 + k * k) * np.tan(half))
    # unperturbed value of the same arctan expression is half (mod pi branch)
    branch = np.round((half - base) / np.pi)
    return float(base + np.pi * branch - 0.5 * p.omega * T)


def perturbed_rabi_frequency(k: float, sol: ChrwSolution) -> float:
    """Corrected Rabi frequency near the third harmonic (Omega_t near 2w)."""
    w = sol.params.omega
    return float(np.sqrt(1.0 + k * k) * (sol.Omega_t - 2 * w) + 2 * w)


def _L_norm(k: float, sol: ChrwSolution) -> float:
    # Exact norm of the corrected eigenvector (A_t + k dd,
    # k A_t - dd - sqrt(1+k^2) Omega): the sign of the cross term differs
    # from the printed normalization, which does not normalize that vector.
    Om, dd, At = sol.Omega_t, sol.delta_det, sol.A_t
    val = (2 * (1 + k * k) * Om ** 2 +
           2 * (dd - k * At) * np.sqrt(1 + k * k) * Om)
    return float(np.sqrt(max(val, 0.0)))


def perturbed_cyclic_state(k: float, sol: ChrwSolution) -> np.ndarray:
    """Frame-basis corrected "+" cyclic initial state."""
    Om, dd, At = sol.Omega_t, sol.delta_det, sol.A_t
    L = _L_norm(k, sol)
    vec = np.array([At + k * dd,
                    k * At - dd - np.sqrt(1 + k * k) * Om], dtype=complex)
    return vec / L


def perturbed_dynamical_phase(k: float, sol: ChrwSolution) -> float:
    """Closed-form corrected dynamical phase (+ branch).

    Uses the same slowly-varying-factor and Taylor approximations as the
    analytic derivation; see ``perturbed_dynamical_phase_quadrature`` for the
    assumption-free oracle.
    """
    p = sol.params
    w = p.omega
    Om, dd, At = sol.Omega_t, sol.delta_det, sol.A_t
    xi, zeta, x, z = sol.xi, sol.zeta, sol.x, sol.z
    u, v = sol.u, sol.v
    eps, A, Delta = p.epsilon, p.amplitude, p.delta
    mu = xi * u - zeta * v
    nu = xi * v + zeta * u
    L = _L_norm(k, sol)
    rad = np.sqrt(k * k + 1.0)
    if x == 0.0 or L == 0.0:
        return 0.0
    j1_over_z = 0.5 if z == 0.0 else j1(z) / z

    first = (dd + rad * Om - k * At)
    inner = ((A * A * dd / (2 * w ** 3)) * (eps * (nu ** 2 - mu ** 2) - 2 * Delta * mu * nu)
             - (dd / (128 * w)) * (3 * z ** 4 - 64 * z ** 2 + 512) *
             (u * u * eps - 2 * u * v * Delta - v * v * eps)
             - (2 * A * At / w ** 2) * ((u * eps - v * Delta) * nu -
                                        (u * Delta + v * eps) * mu)
             + (A * At / w) * (2 * j1_over_z + 1.0) *
             (k * (u * u - v * v) + 2 * u * v))
    tail = (4 * k / (x * x)) * jv(2, z) * (u * nu - v * mu) * (
        k * At * (Om + dd) - (1.0 + rad) * Om * dd - rad * Om ** 2 - dd ** 2)
    return float(np.pi / (2 * L * L) * (first * inner + tail))


def perturbed_dynamical_phase_quadrature(k: float, sol: ChrwSolution,
                                         n_points: int = 8192) -> float:
    """Oracle for the corrected dynamical phase without Taylor truncation.

    Integrates <psi'(0)| U~^dag D^dag e^S H e^-S D U~ |psi'(0)> over one
    period with the exact frame rotation e^S.
    """
    p = sol.params
    t = np.linspace(0.0, p.period, n_points + 1)
    U = analytic_propagator(sol, t=t)
    D = diagonalizer(sol)
    psi0 = perturbed_cyclic_state(k, sol)
    psi = (U @ psi0)          # frame states over time

    # e^{S(t)} with S = -i (A/2w) sin(wt) (xi sigma_z + zeta sigma_x)
    phi = (p.amplitude / (2 * p.omega)) * np.sin(p.omega * t)
    xi, zeta, x = sol.xi, sol.zeta, sol.x
    H = hamiltonian_at(t, p)
    if x > 0:
        axis = (xi * SIGMA_Z + zeta * SIGMA_X) / x
        ang = phi * x
        cos = np.cos(ang)[:, None, None]
        sin = np.sin(ang)[:, None, None]
        eS = cos * np.eye(2) - 1j * sin * axis        # e^{S} = exp(-i phi x axis.sigma)
        eSm = cos * np.eye(2) + 1j * sin * axis
        H = eS @ H @ eSm
    mid = np.conj(D.T)[None] @ H @ D[None]
    vals = np.real(np.einsum("ki,kij,kj->k", np.conj(psi), mid, psi))
    return float(-simpson(vals, x=t))


def first_order_correction(sol: ChrwSolution,
                           singular_tol: float = 1e-3) -> PerturbationResult:
    """Assemble the full first-order corrected quantities for one parameter point.

    Near-singular denominators are flagged, not suppressed; the divergence is
    the resonance peak itself.
    """
    p = sol.params
    ky, kx, kz = k_coefficients(sol)
    k = ky + kx + kz
    flags = singular_flags(sol, singular_tol)
    theta_pt = perturbed_total_phase(k, sol)
    alpha_pt = perturbed_dynamical_phase(k, sol)
    theta_unpert = 0.5 * (sol.Omega_t - p.omega) * p.period
    gamma_p = theta_unpert - alpha_pt
    gamma = np.array([gamma_p, -gamma_p])
    u, v = sol.u, sol.v
    return PerturbationResult(
        solution=sol, ky=ky, kx=kx, kz=kz, k=k,
        mu=sol.xi * u - sol.zeta * v,
        nu=sol.xi * v + sol.zeta * u,
        p_coeff=(v * v - u * u) * sol.zeta - 2 * sol.xi * u * v,
        q_coeff=(v * v - u * u) * sol.xi + 2 * u * v * sol.zeta,
        L=_L_norm(k, sol),
        theta_pt=theta_pt,
        Omega_pt=perturbed_rabi_frequency(k, sol),
        gamma_pt=gamma,
        singular_flags=flags,
    )


def perturbed_aa_phases(pr: PerturbationResult) -> np.ndarray:
    """Corrected AA phases (unwrapped +, - pair)."""
    return pr.gamma_pt
