"""Truncated extended-space matrices, spectra, crossings, degeneracies."""

import numpy as np
import pytest

from rabigeo import (
    ModelParams,
    NonConvergent,
    aa_phases,
    build_quantum_rabi,
    build_semiclassical_floquet,
    classify_crossings,
    converged_spectrum,
    hidden_symmetry_check,
    quasienergy_gap,
)


def test_entry_placement():
    p = ModelParams(1.0, 0.5, 1.0, 1.0)
    m = build_semiclassical_floquet(p, 2).entries
    assert m.shape == (10, 10)
    assert np.array_equal(m, m.T)
    # centre block (n=0) and its neighbour couplings
    c = 4  # row of (up, n=0)
    assert m[c, c] == pytest.approx(-0.25)
    assert m[c + 1, c + 1] == pytest.approx(0.25)
    assert m[c, c + 1] == pytest.approx(-0.5)
    assert m[c, c + 2] == pytest.approx(-0.25)   # up-up chain: -A/4
    assert m[c + 1, c + 3] == pytest.approx(0.25)  # down-down chain: +A/4
    assert m[c, c + 3] == 0.0
    assert m[c + 2, c + 2] == pytest.approx(1.0 - 0.25)


def test_quantum_entry_placement():
    p = ModelParams(1.0, 0.5, 0.0, 1.0)
    m = build_quantum_rabi(1.0, p, 3).entries
    assert m.shape == (8, 8)
    assert np.array_equal(m, m.T)
    # ladder couplings carry sqrt(n+1)
    assert m[0, 2] == pytest.approx(-0.25)
    assert m[2, 4] == pytest.approx(-0.25 * np.sqrt(2.0))
    assert m[3, 5] == pytest.approx(0.25 * np.sqrt(2.0))


def test_decoupled_limits():
    # Delta=0, A=0: diagonal matrix, quasienergies fold to -+eps/2 mod omega
    p = ModelParams(0.0, 0.7, 0.0, 1.0)
    res = converged_spectrum(lambda N: build_semiclassical_floquet(p, N))
    assert sorted(res.folded_quasienergies) == pytest.approx([-0.35, 0.35])
    # g=0: qubit (x) oscillator exactly
    pq = ModelParams(1.2, 0.5, 0.0, 1.0)
    Xi = 0.5 * np.hypot(1.2, 0.5)
    resq = converged_spectrum(lambda N: build_quantum_rabi(0.0, pq, N))
    assert resq.eigenvalues[0] == pytest.approx(-Xi, abs=1e-12)
    assert resq.eigenvalues[1] == pytest.approx(min(Xi, 1 - Xi), abs=1e-12)


def test_eigenvalue_ladder_spacing():
    p = ModelParams(1.3, 0.4, 1.0, 1.0)
    vals = np.linalg.eigvalsh(build_semiclassical_floquet(p, 20).entries)
    interior = vals[(vals > -10) & (vals < 10)]
    # each interior eigenvalue has a partner one omega higher
    for v in interior[interior < 9]:
        assert np.min(np.abs(interior - (v + p.omega))) < 1e-9


def test_cross_route_quasienergies(propagation):
    for delta, eps in [(1.0, 0.5), (2.7993, 0.8), (0.7, 1.5)]:
        p = ModelParams(delta, eps, 1.0, 1.0)
        res = converged_spectrum(lambda N: build_semiclassical_floquet(p, N))
        geo = aa_phases(propagation(delta, eps, 1.0))
        assert np.allclose(np.sort(res.folded_quasienergies),
                           np.sort(geo.quasienergies), atol=1e-8)


def test_nonconvergent_raises():
    p = ModelParams(1.0, 0.5, 1.0, 1.0)
    with pytest.raises(NonConvergent):
        converged_spectrum(lambda N: build_semiclassical_floquet(p, N),
                           schedule=[1, 2])


def test_crossing_at_integer_bias():
    reports = classify_crossings(ModelParams(1.0, 1.0, 1.0, 1.0),
                                 np.linspace(2.6, 2.9, 16))
    crossings = [r for r in reports if r.classification == "crossing"]
    assert len(crossings) == 1
    assert crossings[0].delta == pytest.approx(2.738, abs=0.02)
    assert crossings[0].min_gap < 1e-6


def test_anti_crossing_at_noninteger_bias():
    reports = classify_crossings(ModelParams(1.0, 0.8, 1.0, 1.0),
                                 np.linspace(2.7, 2.9, 11))
    assert all(r.classification == "anti_crossing" for r in reports)
    assert min(r.min_gap for r in reports) > 1e-3


def test_quantum_crossing_location():
    # quantized-field model with unit coupling and integer bias: true level
    # crossing among the low-lying states near tunneling 2.5
    reports = classify_crossings(ModelParams(1.0, 1.0, 1.0, 1.0),
                                 np.linspace(2.3, 2.7, 17),
                                 kind="quantum_rabi", g=1.0)
    crossings = [r for r in reports if r.classification == "crossing"]
    assert crossings
    assert any(abs(r.delta - 2.5) < 0.2 for r in crossings)


def test_hidden_symmetry_reports(propagation):
    p = ModelParams(2.738042244241475, 1.0, 1.0, 1.0)
    rep = hidden_symmetry_check(p, propagation(*p.__dict__.values()))
    assert rep.epsilon_is_integer
    assert rep.degenerate
    assert rep.identity_distance < 1e-5
    assert not rep.geometric_quantities_unique

    p2 = ModelParams(2.7993, 0.8, 1.0, 1.0)
    rep2 = hidden_symmetry_check(p2, propagation(2.7993, 0.8, 1.0))
    assert not rep2.epsilon_is_integer
    assert not rep2.degenerate
    assert rep2.geometric_quantities_unique

    # static full-revival: A=0 and Xi*T = 2*pi gives U(T) = identity
    p3 = ModelParams(1.0, 0.0, 0.0, 1.0)
    rep3 = hidden_symmetry_check(p3, propagation(1.0, 0.0, 0.0))
    assert rep3.degenerate
    assert rep3.identity_distance < 1e-10


def test_gap_function_smoke():
    gap = quasienergy_gap(ModelParams(2.0, 0.5, 1.0, 1.0))
    assert 0.0 <= gap <= 0.5
