"""Linear-quadratic fields: kernel identities, both solve routes,
optimality and stationarity properties."""

import warnings

import numpy as np
import pytest

from springctl import (OctProblem, expsum_energy_exact, kernel_matrices_I,
                       kernel_matrices_II, propagate_exact, pulse_approach1,
                       pulse_approach2, pulse_energy, self_consistency_check,
                       solve_approach1, solve_approach2, sta_design)
from springctl.errors import InvalidPenaltyError, NearSingularError
from springctl.pulses import ExpSumPulse, ZeroPulse
from oracles import chunked_complex_quad, minimize_penalised_cost


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------

def test_kernel_diagonal_at_zero_frequency():
    a, b = kernel_matrices_I([0.0], 24.0)
    assert a[0, 0] == pytest.approx(1.0, abs=1e-15)
    assert b[0, 0] == pytest.approx(1.0, abs=1e-15)


def test_kernel_a_is_symmetric():
    a, _ = kernel_matrices_I([0.1, 0.5, 0.9], 17.0)
    assert np.allclose(a, a.T, rtol=1e-15)


def test_kernels_match_defining_integrals():
    rng = np.random.default_rng(19)
    t_f = 13.0
    w = rng.uniform(-1.5, 1.5, size=3)
    a, b = kernel_matrices_I(w, t_f)
    c, d = kernel_matrices_II(w, t_f)
    for j in range(3):
        for k in range(3):
            scale = abs(w[j]) + abs(w[k]) + 1.0
            ia = chunked_complex_quad(
                lambda tau: np.exp(1j * w[j] * (t_f - tau) + 1j * w[k] * tau),
                0.0, t_f, scale) / t_f
            ib = chunked_complex_quad(
                lambda tau: np.exp(1j * w[j] * (t_f - tau) - 1j * w[k] * tau),
                0.0, t_f, scale) / t_f
            ic = chunked_complex_quad(
                lambda tau: np.exp(1j * w[j] * (t_f - tau)
                                   + 1j * w[k] * (tau - t_f)),
                0.0, t_f, scale) / t_f
            idd = chunked_complex_quad(
                lambda tau: np.exp(1j * w[j] * (t_f - tau)
                                   - 1j * w[k] * (tau - t_f)),
                0.0, t_f, scale) / t_f
            assert abs(a[j, k] - ia) < 1e-10
            assert abs(b[j, k] - ib) < 1e-10
            assert abs(c[j, k] - ic) < 1e-10
            assert abs(d[j, k] - idd) < 1e-10


# ---------------------------------------------------------------------------
# approach I
# ---------------------------------------------------------------------------

def test_approach1_single_resonant_spring():
    # (2/t_f) = 2 Re p -> p = 1/t_f, u constant
    problem = OctProblem([0.0], [1.0 + 0.0j], 24.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        sol = solve_approach1(problem)
    assert sol.p[0] == pytest.approx(1.0 / 24.0, abs=1e-12)
    pulse = pulse_approach1(sol, problem.omegas, problem.t_f)
    t = np.linspace(0, 24, 100)
    assert np.allclose(pulse.value(t), 1.0 / 24.0, atol=1e-12)
    assert abs(propagate_exact(pulse, 0.0) - 1.0) < 1e-12


def test_approach1_duplicate_frequencies_rejected():
    with pytest.raises(NearSingularError):
        solve_approach1(OctProblem([0.3, 0.3], [1.0, 1.0], 10.0))


def test_approach1_well_conditioned_hits_targets():
    rng = np.random.default_rng(3)
    omegas = np.array([0.2, 0.5, 0.8])
    targets = rng.normal(size=3) + 1j * rng.normal(size=3)
    problem = OctProblem(omegas, targets, 24.0)
    sol = solve_approach1(problem)
    assert not sol.near_singular
    assert sol.residual < 1e-8 * np.linalg.norm(
        np.concatenate([targets.real, targets.imag]))
    pulse = pulse_approach1(sol, omegas, 24.0)
    for w, zt in zip(omegas, targets):
        assert abs(propagate_exact(pulse, w) - zt) < 1e-6


def test_approach1_zero_adjoints_zero_pulse():
    sol_p = np.zeros(2, dtype=complex)
    pulse = ExpSumPulse(sol_p, np.array([0.1, 0.7]), 5.0)
    assert np.max(np.abs(pulse.value(np.linspace(0, 5, 50)))) == 0.0


def test_approach1_near_singular_flagged_and_warns():
    # an endpoint-inclusive grid containing omega = 0 makes the stacked
    # system rank-deficient; the minimum-norm solve must still hit targets
    omegas = np.linspace(0.0, 1.0, 4)
    problem = OctProblem(omegas, np.ones(4, dtype=complex), 24.0)
    with pytest.warns(UserWarning):
        sol = solve_approach1(problem)
    assert sol.near_singular
    pulse = pulse_approach1(sol, omegas, 24.0)
    for w in omegas:
        assert abs(propagate_exact(pulse, w) - 1.0) < 1e-8


def test_approach1_energy_below_sta_same_targets():
    # both fields hit the same endpoints; the optimal one by construction
    # spends no more energy
    omegas = np.array([0.25, 0.55, 0.85])
    t_f = 24.0
    problem = OctProblem(omegas, np.ones(3, dtype=complex), t_f)
    sol = solve_approach1(problem)
    oct_pulse = pulse_approach1(sol, omegas, t_f)
    sta = sta_design(omegas, t_f)
    assert expsum_energy_exact(oct_pulse) <= pulse_energy(sta.pulse) + 1e-9


# ---------------------------------------------------------------------------
# approach II
# ---------------------------------------------------------------------------

def test_approach2_zero_targets_zero_field():
    problem = OctProblem([0.2, 0.9], np.zeros(2, dtype=complex), 8.0,
                         lam=1e-3)
    z, sol = solve_approach2(problem)
    assert np.allclose(z, 0.0, atol=1e-14)
    assert np.allclose(sol.p, 0.0, atol=1e-14)
    pulse = pulse_approach2(sol, problem)
    assert np.max(np.abs(pulse.value(np.linspace(0, 8, 64)))) < 1e-13


def test_approach2_large_penalty_suppresses_field():
    problem = OctProblem([0.2, 0.9], np.ones(2, dtype=complex), 8.0, lam=1e6)
    z, sol = solve_approach2(problem)
    pulse = pulse_approach2(sol, problem)
    assert expsum_energy_exact(pulse) < 1e-9
    assert np.max(np.abs(z)) < 1e-4


def test_approach2_scalar_closed_form_and_brute_force():
    # omega 0, target 1, t_f 1: z = 1 / (1 + lam / t_f), constant field
    lam, t_f = 1e-3, 1.0
    problem = OctProblem([0.0], [1.0 + 0.0j], t_f, lam=lam)
    z, sol = solve_approach2(problem)
    assert z[0] == pytest.approx(1.0 / (1.0 + lam / t_f), abs=1e-12)
    pulse = pulse_approach2(sol, problem)
    report = self_consistency_check(problem, pulse)

    u_disc, z_disc, cost_disc = minimize_penalised_cost(0.0, 1.0 + 0j, t_f,
                                                        lam, n_seg=200)
    assert abs(z_disc - z[0]) < 1e-4
    assert report.cost == pytest.approx(cost_disc, rel=1e-4)
    # discrete minimiser is the same constant field
    assert np.max(np.abs(u_disc - pulse.value(0.5 * t_f))) < 1e-3


def test_approach2_lambda_monotonicity():
    omegas = np.linspace(0.0, 1.0, 5)
    targets = np.ones(5, dtype=complex)
    energies = []
    for lam in (1e-4, 1e-3, 1e-2, 1e-1, 1.0):
        problem = OctProblem(omegas, targets, 12.0, lam=lam)
        _, sol = solve_approach2(problem)
        energies.append(expsum_energy_exact(pulse_approach2(sol, problem)))
    assert all(a >= b - 1e-12 for a, b in zip(energies, energies[1:]))


def test_approach2_stationarity_in_random_directions():
    # J is evaluated exactly (closed-form propagation and energy), so the
    # centred finite difference of the true functional at the optimum must
    # vanish to roundoff in any direction
    rng = np.random.default_rng(29)
    omegas = np.linspace(0.0, 1.0, 4)
    targets = np.exp(1j * rng.uniform(0, 2 * np.pi, 4))
    lam, t_f = 1e-2, 10.0
    problem = OctProblem(omegas, targets, t_f, lam=lam)
    _, sol = solve_approach2(problem)
    pulse = pulse_approach2(sol, problem)

    def cost(p):
        endpoints = np.array([propagate_exact(p, w) for w in omegas])
        return (0.5 * float(np.sum(np.abs(endpoints - targets) ** 2))
                + 0.5 * lam * expsum_energy_exact(p))

    j0 = cost(pulse)
    eps = 1e-4
    for _ in range(20):
        n_dir = int(rng.integers(1, 4))
        direction = ExpSumPulse(
            rng.normal(size=n_dir) + 1j * rng.normal(size=n_dir),
            rng.uniform(-2.5, 2.5, size=n_dir), t_f)
        jp = cost(pulse + direction.scaled(eps))
        jm = cost(pulse + direction.scaled(-eps))
        assert abs(jp - jm) / (2 * eps) < 1e-5 * max(j0, 1e-12)


def test_invalid_penalty():
    with pytest.raises(InvalidPenaltyError):
        OctProblem([0.1], [1.0], 5.0, lam=0.0)
    with pytest.raises(InvalidPenaltyError):
        solve_approach2(OctProblem([0.1], [1.0], 5.0))


# ---------------------------------------------------------------------------
# self-consistency report
# ---------------------------------------------------------------------------

def test_report_zero_pulse_zero_targets():
    problem = OctProblem([0.3], np.zeros(1, dtype=complex), 4.0, lam=1e-2)
    report = self_consistency_check(problem, ZeroPulse(4.0))
    assert report.cost == 0.0
    assert report.energy == 0.0
    assert np.allclose(report.endpoint_errors, 0.0)


def test_report_well_conditioned_endpoint_errors():
    omegas = np.array([0.2, 0.5, 0.8])
    problem = OctProblem(omegas, np.ones(3, dtype=complex), 24.0)
    sol = solve_approach1(problem)
    pulse = pulse_approach1(sol, omegas, 24.0)
    report = self_consistency_check(problem, pulse)
    assert np.max(report.endpoint_errors) < 1e-6
    assert report.cost is None


def test_expsum_energy_closed_form_vs_quadrature():
    rng = np.random.default_rng(37)
    pulse = ExpSumPulse(rng.normal(size=3) + 1j * rng.normal(size=3),
                        rng.uniform(-2, 2, size=3), 9.0)
    assert expsum_energy_exact(pulse) == pytest.approx(pulse_energy(pulse),
                                                       rel=3e-6)


def test_optimality_on_published_configurations():
    # for the published grid (endpoint-inclusive on [0, 1], t_f = 24) the
    # minimum-energy field must not exceed the shortcut energy
    for n in (4, 6):
        omegas = np.linspace(0.0, 1.0, n)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            sol = solve_approach1(OctProblem(omegas, np.ones(n, dtype=complex),
                                             24.0))
        e_oct = expsum_energy_exact(pulse_approach1(sol, omegas, 24.0))
        e_sta = pulse_energy(sta_design(omegas, 24.0).pulse)
        assert e_oct <= e_sta + 1e-9
