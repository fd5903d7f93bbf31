"""Bloch-equation validation: integrator invariants, excitation/inversion
via the spring mapping, and selective control of two spins."""

import math

import numpy as np
import pytest

from springctl import (BlochState, SpinExperiment, bloch_propagate,
                       excitation_from_spring, experiment_trajectory,
                       fidelity, fidelity_bandwidth, fidelity_sweep,
                       inversion_sequence, propagate_exact,
                       selective_inversion_pulse, simulate_experiment,
                       sta_design)
from springctl.errors import NotControllableError
from springctl.pulses import SampledPulse, ZeroPulse
from oracles import rk4_bloch


def _constant_pulse(level, t_f, n=9):
    return SampledPulse(np.linspace(0.0, t_f, n), np.full(n, level))


# ---------------------------------------------------------------------------
# integrator basics
# ---------------------------------------------------------------------------

def test_free_precession_fixes_north_pole():
    state = bloch_propagate(ZeroPulse(5.0), omega=1.7, n_steps=2048)
    assert state.vector == pytest.approx([0.0, 0.0, 1.0], abs=1e-15)


def test_resonant_pi_rotation():
    # omega = 0, int u dt = pi: exact inversion
    pulse = _constant_pulse(math.pi / 4.0, 4.0)
    state = bloch_propagate(pulse, 0.0, n_steps=4096)
    assert state.z == pytest.approx(-1.0, abs=1e-12)


def test_norm_conserved_along_trajectory():
    design = sta_design(np.zeros(4), 24.0)
    experiment = inversion_sequence(excitation_from_spring(design.pulse))
    _, states = experiment_trajectory(experiment, 0.45, n_steps=4096,
                                      n_frames=257)
    norms = np.linalg.norm(states, axis=1)
    assert np.max(np.abs(norms - 1.0)) < 1e-12


def test_step_doubling_convergence():
    # auto mode doubles until one more doubling moves the endpoint by less
    # than 1e-8; verify the returned state against an even finer fixed run
    design = sta_design(np.zeros(2), 24.0)
    pulse = excitation_from_spring(design.pulse)
    auto = bloch_propagate(pulse, 0.3).vector
    fine = bloch_propagate(pulse, 0.3, n_steps=262144).vector
    assert np.linalg.norm(auto - fine) < 1e-8


def test_agreement_with_independent_rk4():
    design = sta_design(np.zeros(2), 24.0)
    pulse = excitation_from_spring(design.pulse)
    ours = bloch_propagate(pulse, 0.4, n_steps=65536).vector
    oracle = rk4_bloch(pulse.value, 0.4, 24.0, 20000)
    assert np.linalg.norm(ours - oracle) < 1e-6


# ---------------------------------------------------------------------------
# excitation through the spring mapping
# ---------------------------------------------------------------------------

def test_excitation_scaling_is_linear_on_springs():
    design = sta_design([0.3, 0.9], 10.0)
    scaled = excitation_from_spring(design.pulse)
    for w in design.omegas:
        z = propagate_exact(scaled, w)
        assert abs(z - math.pi / 2) < 1e-7


def test_excitation_zero_pulse():
    scaled = excitation_from_spring(ZeroPulse(3.0))
    assert scaled.value(1.0) == 0.0


def test_resonant_excitation_is_exact():
    # at omega = 0 the azimuth stays 0 and theta integrates the field, so
    # the pi/2-scaled spring pulse lands exactly on the equator
    design = sta_design(np.zeros(8), 24.0)
    pulse = excitation_from_spring(design.pulse)
    state = bloch_propagate(pulse, 0.0, n_steps=16384)
    assert state.x > 0.999
    assert abs(state.y) < 1e-6
    assert abs(state.z) < 2e-3


def test_fidelity_values():
    assert fidelity(BlochState(0.0, 0.0, -1.0)) == 1.0
    assert fidelity(BlochState(0.0, 0.0, 1.0)) == -1.0
    assert fidelity(BlochState(1.0, 0.0, 0.0)) == 0.0


# ---------------------------------------------------------------------------
# inversion
# ---------------------------------------------------------------------------

def test_inversion_zero_pulse_gives_minus_one():
    experiment = inversion_sequence(ZeroPulse(4.0))
    profile = fidelity_sweep(experiment, [0.0, 0.5], n_steps=512)
    assert np.allclose(profile.values, -1.0, atol=1e-15)


def test_exact_quarter_turn_composition():
    # two pi/2 passes (second time-reversed) invert exactly at omega = 0
    pulse = _constant_pulse(math.pi / 8.0, 4.0)
    state = simulate_experiment(inversion_sequence(pulse), 0.0, n_steps=4096)
    assert state.z == pytest.approx(-1.0, abs=1e-6)


def test_robust_inversion_at_resonance():
    design = sta_design(np.zeros(8), 24.0)
    experiment = inversion_sequence(excitation_from_spring(design.pulse))
    state = simulate_experiment(experiment, 0.0, n_steps=16384)
    assert fidelity(state) >= 0.999


def test_bandwidth_grows_with_design_order():
    offsets = np.linspace(-1.2, 1.2, 97)
    widths = []
    for n in (2, 8):
        design = sta_design(np.zeros(n), 24.0)
        experiment = inversion_sequence(excitation_from_spring(design.pulse))
        profile = fidelity_sweep(experiment, offsets, n_steps=4096)
        widths.append(fidelity_bandwidth(profile, 0.99))
    assert widths[1] > widths[0]


def test_fidelity_profile_symmetry():
    design = sta_design(np.zeros(4), 24.0)
    experiment = inversion_sequence(excitation_from_spring(design.pulse))
    offsets = np.array([-0.8, -0.3, 0.3, 0.8])
    profile = fidelity_sweep(experiment, offsets, n_steps=4096)
    assert profile.values[0] == pytest.approx(profile.values[3], abs=1e-9)
    assert profile.values[1] == pytest.approx(profile.values[2], abs=1e-9)


# ---------------------------------------------------------------------------
# spin-spring mapping validity
# ---------------------------------------------------------------------------

def test_small_angle_mapping_error_shrinks_quadratically():
    # scaled-down drives: the Bloch (theta, phi) trajectory approaches the
    # spring (r, Phi) trajectory at least quadratically in the scale
    design = sta_design(np.zeros(2), 24.0)
    omega = 0.3
    errors = []
    for eps in (0.05, 0.025, 0.0125):
        pulse = design.pulse.scaled(eps)
        state = bloch_propagate(pulse, omega, n_steps=32768)
        theta = math.acos(np.clip(state.z, -1.0, 1.0))
        phi = math.atan2(state.y, state.x)
        z_spring = propagate_exact(pulse, omega)
        r, big_phi = abs(z_spring), np.angle(z_spring)
        err = abs(theta - r) + abs(r) * abs(
            (phi - big_phi + math.pi) % (2 * math.pi) - math.pi)
        errors.append(err)
    assert errors[0] / errors[1] > 3.5
    assert errors[1] / errors[2] > 3.5


# ---------------------------------------------------------------------------
# selective control
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def selective():
    return selective_inversion_pulse(0.0, 0.5, 30.0)


def test_selective_spring_endpoints(selective):
    assert abs(propagate_exact(selective, 0.0) - math.pi / 2) < 1e-6
    assert abs(propagate_exact(selective, 0.5)) < 1e-6


def test_selective_inverts_first_parks_second(selective):
    experiment = SpinExperiment(selective, mode="selective")
    z1 = simulate_experiment(experiment, 0.0, n_steps=16384).z
    z2 = simulate_experiment(experiment, 0.5, n_steps=16384).z
    assert z1 <= -0.99
    assert z2 >= 0.99


def test_selective_parked_spring_stays_near_origin(selective):
    # the spring image of the parked spin stays well inside the driven
    # spin's pi/2 excursion throughout (measured transient peak ~0.53)
    from springctl.spin import PARKED_RADIUS_BOUND
    t_grid = np.linspace(0.5, 30.0, 40)
    radii = [abs(propagate_exact(selective, 0.5, float(t))) for t in t_grid]
    assert max(radii) < PARKED_RADIUS_BOUND


def test_selective_roles_swap():
    # relabeling is an exact symmetry of the linear design: the spring
    # endpoints swap.  On the Bloch side only the parked spin (resonant,
    # hence exactly mapped) keeps machine-level quality; inverting the
    # off-resonant spin is first-order accurate only.
    pulse = selective_inversion_pulse(0.5, 0.0, 30.0)
    assert abs(propagate_exact(pulse, 0.5) - math.pi / 2) < 1e-6
    assert abs(propagate_exact(pulse, 0.0)) < 1e-6
    experiment = SpinExperiment(pulse, mode="selective")
    assert simulate_experiment(experiment, 0.5, n_steps=16384).z <= -0.9
    assert simulate_experiment(experiment, 0.0, n_steps=16384).z >= 0.99


def test_selective_degenerate_pair_rejected():
    with pytest.raises(NotControllableError):
        selective_inversion_pulse(0.5, -0.5, 30.0)
