"""Counterrotating-hybridized rotating-wave treatment of the driven qubit.

A time-dependent unitary with generator proportional to
sin(omega t) (xi sigma_z + zeta sigma_x) moves the lab-frame Hamiltonian into
a rotating frame; (xi, zeta) are fixed self-consistently so the surviving
first-harmonic drive takes RWA form with renormalized splitting and
amplitude.  The frame dynamics is then solved in closed form, which yields
analytic total/dynamical/AA phases and the harmonic-resonance conditions.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, root, root_scalar, minimize_scalar
from scipy.special import j0, j1, jv

from .model import (
    ModelParams,
    NumericPolicy,
    DEFAULT_POLICY,
    NoConvergence,
    NoRootInBracket,
)

TWO_PI = 2.0 * np.pi

# Search window (in Delta/omega) used for all resonance roots.
RESONANCE_BRACKET = (0.05, 4.5)


@dataclass(frozen=True)
class ChrwSolution:
    """Converged transform parameters and every derived renormalized quantity."""

    params: ModelParams
    xi: float
    zeta: float
    x: float            # sqrt(xi^2 + zeta^2)
    z: float            # (A/omega) x, Bessel argument
    eps_t: float        # renormalized bias
    delta_t: float      # renormalized tunneling
    jc: float
    Xi_t: float         # renormalized splitting sqrt(delta_t^2 + eps_t^2)
    u: float
    v: float
    A_t: float          # renormalized drive amplitude
    delta_det: float    # detuning Xi_t - omega
    Omega_t: float      # modulated Rabi frequency sqrt(delta_det^2 + A_t^2)
    residuals: np.ndarray


def _derived(p: ModelParams, xi: float, zeta: float):
    """All renormalized quantities as functions of (xi, zeta)."""
    x = np.hypot(xi, zeta)
    z = p.amplitude / p.omega * x
    num = p.delta * xi - p.epsilon * zeta
    if x > 0:
        ratio = (1.0 - j0(z)) * num / (x * x)
        jc = (1.0 - j0(z) - jv(2, z)) / (x * x)
        A_t = 2.0 * j1(z) * num / x
    else:
        ratio = 0.0
        jc = 0.0
        A_t = 0.0
    eps_t = p.epsilon + zeta * ratio
    delta_t = p.delta - xi * ratio
    Xi_t = np.hypot(delta_t, eps_t)
    return x, z, num, jc, eps_t, delta_t, Xi_t, A_t


def _residuals(p: ModelParams, xi: float, zeta: float) -> np.ndarray:
    x, z, num, jc, eps_t, delta_t, Xi_t, A_t = _derived(p, xi, zeta)
    c1 = 1.0 - xi - zeta * zeta * jc
    c2 = zeta * (1.0 - xi * jc)
    f1 = 0.5 * p.amplitude * (delta_t / Xi_t * c1 + eps_t / Xi_t * c2)
    if x > 0:
        f1 -= num / x * j1(z)
    f2 = eps_t * c1 - delta_t * c2
    return np.array([f1, f2])


def _seed(p: ModelParams):
    """Small-amplitude closed-form limit used to start the continuation."""
    Xi0 = np.hypot(p.delta, p.epsilon)
    if Xi0 == 0.0:
        return 1.0, 0.0
    xi = (p.omega + p.epsilon ** 2 / Xi0) / (Xi0 + p.omega)
    if p.delta > 0:
        zeta = p.epsilon * (1.0 - xi) / p.delta
    else:
        zeta = 0.0
    return xi, zeta


def solve_self_consistent(p: ModelParams,
                          policy: NumericPolicy = DEFAULT_POLICY) -> ChrwSolution:
    """Solve the coupled (xi, zeta) equations by continuation in the amplitude.

    For zero bias the zeta = 0 branch is solved exactly as a scalar equation.
    Warns when A/omega >= 2, outside the method's validity regime.
    """
    if p.amplitude >= 2.0 * p.omega:
        warnings.warn("CHRW transform is used outside its A/omega < 2 regime",
                      stacklevel=2)
    xi, zeta = _seed(p)
    if p.delta == 0.0 and p.epsilon == 0.0:
        xi, zeta = 1.0, 0.0
    elif p.epsilon == 0.0:
        def f(x_):
            return _residuals(p, x_, 0.0)[0]
        try:
            x1 = xi - 0.02 if xi > 0.1 else xi + 0.02
            sol = root_scalar(f, x0=xi, x1=x1, xtol=1e-15, maxiter=200)
        except Exception as exc:
            raise NoConvergence(str(exc)) from exc
        if not sol.converged:
            raise NoConvergence("scalar xi solve did not converge")
        xi, zeta = float(sol.root), 0.0
    else:
        n_steps = max(2, int(np.ceil(8 * p.amplitude / p.omega)))
        for amp in np.linspace(0.0, p.amplitude, n_steps + 1)[1:]:
            p_step = ModelParams(p.delta, p.epsilon, float(amp), p.omega)
            sol = root(lambda q: _residuals(p_step, q[0], q[1]),
                       np.array([xi, zeta]), method="hybr", tol=1e-14)
            # hybr may flag xtol exhaustion even at machine-level residuals;
            # accept on the residual itself
            if np.max(np.abs(sol.fun)) > 1e-13:
                raise NoConvergence(
                    f"continuation failed at A={amp:g}: {sol.message} "
                    f"(residuals {sol.fun})")
            xi, zeta = float(sol.x[0]), float(sol.x[1])

    res = _residuals(p, xi, zeta)
    if np.max(np.abs(res)) > policy.root_tol:
        raise NoConvergence(f"residuals {res} above root_tol={policy.root_tol:g}")

    x, z, num, jc, eps_t, delta_t, Xi_t, A_t = _derived(p, xi, zeta)
    u = np.sqrt(max(0.0, 0.5 - eps_t / (2.0 * Xi_t))) if Xi_t > 0 else np.sqrt(0.5)
    v = np.sqrt(max(0.0, 0.5 + eps_t / (2.0 * Xi_t))) if Xi_t > 0 else np.sqrt(0.5)
    delta_det = Xi_t - p.omega
    Omega_t = np.hypot(delta_det, A_t)
    return ChrwSolution(params=p, xi=xi, zeta=zeta, x=x, z=z, eps_t=eps_t,
                        delta_t=delta_t, jc=jc, Xi_t=Xi_t, u=u, v=v, A_t=A_t,
                        delta_det=delta_det, Omega_t=Omega_t, residuals=res)


def analytic_propagator(sol: ChrwSolution, p: ModelParams | None = None,
                        t: float | np.ndarray = 0.0) -> np.ndarray:
    """Closed-form rotating-frame propagator; scalar t gives a 2x2 array."""
    p = p or sol.params
    t = np.asarray(t, dtype=float)
    Om, dd, At = sol.Omega_t, sol.delta_det, sol.A_t
    half = 0.5 * Om * t
    cos = np.cos(half)
    sinc = np.where(Om > 0, np.sin(half) / (Om if Om > 0 else 1.0), 0.5 * t)
    phase = np.exp(-0.5j * p.omega * t)
    out = np.empty(t.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = phase * (cos - 1j * dd * sinc)
    out[..., 0, 1] = -phase * 1j * At * sinc
    out[..., 1, 0] = -np.conj(phase) * 1j * At * sinc
    out[..., 1, 1] = np.conj(phase) * (cos + 1j * dd * sinc)
    return out


def cyclic_states_frame(sol: ChrwSolution) -> np.ndarray:
    """Eigenvectors of the frame propagator at t = T (rows: +, - branch)."""
    Om, dd, At = sol.Omega_t, sol.delta_det, sol.A_t
    states = np.empty((2, 2), dtype=complex)
    for row, sign in enumerate((1.0, -1.0)):
        denom = Om - sign * dd
        if denom <= 0:
            states[row] = [1.0, 0.0] if sign > 0 else [0.0, 1.0]
            continue
        vec = np.array([0.5 - sign * dd / (2 * Om), -sign * At / (2 * Om)])
        states[row] = vec * np.sqrt(2 * Om / denom)
    return states


def diagonalizer(sol: ChrwSolution) -> np.ndarray:
    """D = u sigma_z - v sigma_x mapping the frame eigenbasis back."""
    return np.array([[sol.u, -sol.v], [-sol.v, -sol.u]], dtype=complex)


def cyclic_states_lab(sol: ChrwSolution) -> np.ndarray:
    """Lab-frame cyclic initial states D |psi_frame(0)> (S(0) = 0)."""
    return (diagonalizer(sol) @ cyclic_states_frame(sol).T).T


def chrw_phases(sol: ChrwSolution, p: ModelParams | None = None):
    """Analytic (theta_+-, alpha_+-, gamma_+-) of the first-harmonic dynamics.

    theta_+ = (Omega_t - omega) T / 2, alpha from the closed-form quadrature
    of the frame trajectory, gamma = theta - alpha.  Values are returned
    unwrapped (not reduced to a principal interval).
    """
    p = p or sol.params
    T = p.period
    xi, zeta, x, z = sol.xi, sol.zeta, sol.x, sol.z
    eps_t, delta_t, Xi_t = sol.eps_t, sol.delta_t, sol.Xi_t
    At, dd, Om = sol.A_t, sol.delta_det, sol.Omega_t
    J0, J1 = j0(z), j1(z)
    eps, A, Delta = p.epsilon, p.amplitude, p.delta

    theta_p = 0.5 * (Om - p.omega) * T

    if x == 0.0 or Om == 0.0:
        return (np.array([theta_p, -theta_p]), np.zeros(2),
                np.array([theta_p, -theta_p]))

    x2 = x * x
    j1_over_z = 0.5 if z == 0.0 else J1 / z
    eps_term = (eps_t / Xi_t * dd * (1.0 + J0)
                + 2.0 * xi * zeta / x2 * delta_t / Xi_t * dd * (1.0 - J0)
                - 2.0 * zeta / x * At * J1
                + (xi * xi - zeta * zeta) / x2 * eps_t / Xi_t * dd * (1.0 - J0))
    a_term = (xi * xi / x2 * delta_t / Xi_t
              + xi * zeta / x2 * eps_t / Xi_t * (2.0 * j1_over_z - 1.0)
              + 2.0 * zeta * zeta / x2 * delta_t / Xi_t * j1_over_z)
    d_term = (zeta * zeta / x2 * delta_t / Xi_t * dd
              + xi * xi / x2 * delta_t / Xi_t * J0 * dd
              + xi * zeta / x2 * eps_t / Xi_t * dd * (1.0 - J0)
              + xi / x * At * J1)
    alpha_p = (T / (4.0 * Om)) * (eps * eps_term + A * At * a_term
                                  + 2.0 * Delta * d_term)
    gamma_p = theta_p - alpha_p
    return (np.array([theta_p, -theta_p]),
            np.array([alpha_p, -alpha_p]),
            np.array([gamma_p, -gamma_p]))


def chrw_aa_symmetric(sol: ChrwSolution) -> float:
    """Zero-bias closed form for gamma_+ (must agree with chrw_phases at eps=0)."""
    p = sol.params
    T = p.period
    At, dd, Om, dt = sol.A_t, sol.delta_det, sol.Omega_t, sol.delta_t
    if Om == 0.0 or At == 0.0:
        return 0.5 * (Om - p.omega) * T
    return (0.5 * (Om - p.omega)
            - At / (2.0 * Om) * (dt * dd / At + 0.5 * p.amplitude + 0.5 * At)) * T


def rabi_frequency_2nd_order(p: ModelParams) -> float:
    """Second-order (in A) estimate of the modulated Rabi frequency.

    The printed series gives a squared-frequency expression; it is interpreted
    as Omega^2 and the square root is returned (see ``SECOND_ORDER_CONVENTION``).
    """
    Xi0 = np.hypot(p.delta, p.epsilon)
    if Xi0 == 0.0:
        raise ValueError("second-order Rabi frequency undefined at Delta=epsilon=0")
    val = (p.omega - Xi0) ** 2 + (p.amplitude ** 2 * p.delta ** 2 /
                                  (2.0 * Xi0 * (p.omega + Xi0)))
    return float(np.sqrt(val))


SECOND_ORDER_CONVENTION = (
    "second-order Rabi frequency series is treated as Omega^2; "
    "the square root of the printed right-hand side is used")


def _omega_t_of_delta(delta: float, p_base: ModelParams,
                      policy: NumericPolicy) -> float:
    p = ModelParams(delta, p_base.epsilon, p_base.amplitude, p_base.omega)
    return solve_self_consistent(p, policy).Omega_t


def _bracketed_roots(f, lo: float, hi: float, n_scan: int = 240):
    """All sign-change roots of f on [lo, hi] from a uniform scan."""
    xs = np.linspace(lo, hi, n_scan)
    fs = np.array([f(x) for x in xs])
    roots = []
    for k in range(n_scan - 1):
        if fs[k] == 0.0:
            roots.append(xs[k])
        elif fs[k] * fs[k + 1] < 0:
            roots.append(brentq(f, xs[k], xs[k + 1], xtol=1e-10))
    return roots


def _uncertainty_of_delta(delta: float, p_base: ModelParams,
                          policy: NumericPolicy) -> float:
    from .propagate import propagate
    from .geometry import aa_phases
    p = ModelParams(delta, p_base.epsilon, p_base.amplitude, p_base.omega)
    return aa_phases(propagate(p, policy)).uncertainty


def resonance_position(p_base: ModelParams, order: int, method: str = "chrw",
                       policy: NumericPolicy = DEFAULT_POLICY,
                       bracket: tuple[float, float] | None = None) -> float:
    """Tunneling strength at which the requested harmonic resonance occurs.

    order 1: second-harmonic condition Omega_t = omega; order 2: third
    harmonic, Omega_t = 2 omega.  Methods: "chrw" roots the analytic
    condition, "second_order" roots the truncated-series condition, "numeric"
    maximizes the time-energy uncertainty s(Delta) via a grid scan plus
    bounded golden-section refinement.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    if method not in ("chrw", "second_order", "numeric"):
        raise ValueError(f"unknown method {method!r}")
    w = p_base.omega
    lo, hi = bracket if bracket is not None else (
        RESONANCE_BRACKET[0] * w, RESONANCE_BRACKET[1] * w)
    target = (order + 1) * w  # Omega_t = omega or 2*omega

    if method == "chrw":
        f = lambda d: _omega_t_of_delta(d, p_base, policy) - (target - w)
        roots = _bracketed_roots(f, lo, hi)
        if not roots:
            raise NoRootInBracket(
                f"Omega_t = {order}*omega has no root in [{lo:g}, {hi:g}]")
        return float(max(roots))

    if method == "second_order":
        f = lambda d: rabi_frequency_2nd_order(
            ModelParams(d, p_base.epsilon, p_base.amplitude, w)) - (target - w)
        roots = _bracketed_roots(f, lo, hi)
        if not roots:
            raise NoRootInBracket(
                f"second-order condition has no root in [{lo:g}, {hi:g}]")
        return float(max(roots))

    # numeric: locate the s(Delta) local maximum nearest the CHRW prediction
    try:
        guess = resonance_position(p_base, order, "chrw", policy, bracket)
    except NoRootInBracket:
        guess = 0.5 * (lo + hi)
    span = 0.35 * w
    xs = np.linspace(max(lo, guess - span), min(hi, guess + span), 29)
    ss = np.array([_uncertainty_of_delta(x, p_base, policy) for x in xs])
    k = int(np.argmax(ss))
    if k == 0 or k == len(xs) - 1:
        raise NoRootInBracket("uncertainty has no interior maximum near the "
                              "predicted resonance")
    res = minimize_scalar(lambda d: -_uncertainty_of_delta(d, p_base, policy),
                          bracket=(xs[k - 1], xs[k], xs[k + 1]),
                          method="golden", options={"xtol": 1e-7})
    return float(res.x)
