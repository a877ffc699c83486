"""Second-harmonic corrections: closed forms against quadrature oracles."""

import numpy as np
import pytest

from rabigeo import (
    ModelParams,
    first_order_correction,
    k_coefficients,
    k_coefficients_quadrature,
    solve_self_consistent,
)
from rabigeo.chrw import chrw_phases
from rabigeo.perturbation import (
    perturbed_cyclic_state,
    perturbed_dynamical_phase,
    perturbed_dynamical_phase_quadrature,
    perturbed_rabi_frequency,
    perturbed_total_phase,
    singular_flags,
)

OFF_RESONANT = [(0.6, 0.5, 1.0), (1.4, 0.8, 1.0), (2.2, 0.5, 1.0),
                (3.2, 0.3, 1.0), (1.0, 1.2, 0.8), (2.6, 1.5, 1.2)]


@pytest.mark.parametrize("delta,eps,amp", OFF_RESONANT)
def test_k_closed_forms_match_quadrature(delta, eps, amp):
    sol = solve_self_consistent(ModelParams(delta, eps, amp, 1.0))
    closed = np.array(k_coefficients(sol))
    quad = np.array(k_coefficients_quadrature(sol))
    scale = max(1.0, np.max(np.abs(quad)))
    assert np.max(np.abs(closed - quad)) / scale < 1e-8


def test_k_vanishes_with_drive():
    sol = solve_self_consistent(ModelParams(1.3, 0.7, 1e-5, 1.0))
    assert all(abs(v) < 1e-10 for v in k_coefficients(sol))


def test_total_phase_collapses_at_k_zero():
    sol = solve_self_consistent(ModelParams(1.9, 0.6, 1.0, 1.0))
    unpert = 0.5 * (sol.Omega_t - 1.0) * sol.params.period
    assert perturbed_total_phase(0.0, sol) == pytest.approx(unpert, abs=1e-12)
    assert perturbed_rabi_frequency(0.0, sol) == pytest.approx(sol.Omega_t)


def test_cyclic_state_is_normalized_eigendirection():
    sol = solve_self_consistent(ModelParams(1.9, 0.6, 1.0, 1.0))
    for k in (0.0, 0.3, -2.0):
        psi = perturbed_cyclic_state(k, sol)
        assert np.linalg.norm(psi) == pytest.approx(1.0, abs=1e-12)
    # k=0 state is the unperturbed frame eigenvector of the "+" branch
    psi0 = perturbed_cyclic_state(0.0, sol)
    Om, dd, At = sol.Omega_t, sol.delta_det, sol.A_t
    Hbar = np.array([[dd, At], [At, -dd]]) / 2.0
    resid = Hbar @ psi0 - (-0.5 * Om) * psi0
    assert np.max(np.abs(resid)) < 1e-12


def test_dynamical_phase_quadrature_matches_unperturbed():
    # at k=0 the oracle must reproduce the closed-form first-harmonic phase
    for delta, eps in [(1.9, 0.6), (1.2, 0.4)]:
        sol = solve_self_consistent(ModelParams(delta, eps, 1.0, 1.0))
        _, alpha, _ = chrw_phases(sol)
        quad = perturbed_dynamical_phase_quadrature(0.0, sol)
        assert quad == pytest.approx(alpha[0], abs=1e-8)


def test_dynamical_phase_closed_form_tracks_oracle():
    # weak drive: Taylor truncation error is negligible
    sol = solve_self_consistent(ModelParams(2.0, 0.5, 0.2, 1.0))
    pr = first_order_correction(sol)
    closed = perturbed_dynamical_phase(pr.k, sol)
    quad = perturbed_dynamical_phase_quadrature(pr.k, sol)
    assert abs(closed - quad) < 1e-3
    # moderate drive: still within a few percent
    sol = solve_self_consistent(ModelParams(2.0, 0.5, 1.0, 1.0))
    pr = first_order_correction(sol)
    closed = perturbed_dynamical_phase(pr.k, sol)
    quad = perturbed_dynamical_phase_quadrature(pr.k, sol)
    assert abs(closed - quad) / abs(quad) < 0.05


def test_corrected_aa_reduces_to_uncorrected():
    # drive -> 0 removes the second-harmonic correction entirely
    sol = solve_self_consistent(ModelParams(1.8, 0.6, 0.02, 1.0))
    pr = first_order_correction(sol)
    _, _, gamma = chrw_phases(sol)
    assert abs(pr.gamma_pt[0] - gamma[0]) < 1e-6
    assert pr.gamma_pt[0] == pytest.approx(-pr.gamma_pt[1])


def test_singular_flags_near_denominator_zeros():
    # second-harmonic resonance: Omega_t = omega is a flagged denominator
    from rabigeo import resonance_position
    base = ModelParams(2.0, 0.5, 1.0, 1.0)
    d = resonance_position(base, order=1, method="chrw")
    sol = solve_self_consistent(ModelParams(d, 0.5, 1.0, 1.0))
    flags = singular_flags(sol, 1e-3)
    assert flags["near_omega"]
    sol_off = solve_self_consistent(ModelParams(2.2, 0.5, 1.0, 1.0))
    assert not any(singular_flags(sol_off, 1e-3).values())


def test_result_record_consistency():
    sol = solve_self_consistent(ModelParams(1.4, 0.8, 1.0, 1.0))
    pr = first_order_correction(sol)
    assert pr.k == pytest.approx(pr.ky + pr.kx + pr.kz)
    assert pr.mu == pytest.approx(sol.xi * sol.u - sol.zeta * sol.v)
    assert pr.nu == pytest.approx(sol.xi * sol.v + sol.zeta * sol.u)
    assert pr.L > 0.0
