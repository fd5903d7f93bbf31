"""Ion-cyclotron-resonance excitation designed on the spring ensemble.

Inside the rotating-wave approximation, the rotating-frame ion velocity
obeys a spring equation whose frequency is the detuning from the carrier:
designing the drive envelope on springs at omega in [0, 200] rad/ms and
multiplying by cos(omega_0 t) excites ions within +-100 rad/ms (about
+-16 kHz) of the carrier, with the tanh target profile setting the radius
and a linear-in-frequency phase of slope eta * t_f.  Because the envelope
is real, the response is mirror-symmetric about the carrier: an ion at
detuning -d acquires the conjugate endpoint of one at +d.

Everything is designed in dimensionless units (time in ms, rates in
rad/ms) and converted to SI only at the field level, so the design is
independent of the physical scales E0, B0, f0.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .adiabatic import quadratic_phase_integral
from .core import FrequencyGrid, propagate_exact
from .errors import ResolutionError
from .optimal import (OctProblem, OctReport, pulse_approach2,
                      self_consistency_check, solve_approach2)
from .pulses import ChirpPulse, ExpSumPulse, Pulse

__all__ = [
    "IcrConfig", "IonState", "RwaResult", "IcrObservables", "IcrDesign",
    "icr_target_profile", "design_icr_pulse", "envelope_to_physical",
    "PhysicalField", "simulate_ion_full", "simulate_ions_full",
    "simulate_ion_rwa", "icr_observables", "rwa_sweep", "full_sweep",
    "adiabatic_icr_reference", "AdiabaticIcrReference",
]

MS = 1e-3  # seconds per design time unit


@dataclass(frozen=True)
class IcrConfig:
    """Spectrometer and design parameters (defaults: a typical FT-ICR setup).

    Design quantities (omega_s, mu, eta, band) are dimensionless with time
    in ms; field quantities are SI.
    """

    e0_v_per_m: float = 100.0
    b0_tesla: float = 10.0
    f0_hz: float = 500e3
    tf_ms: float = 1.0
    omega_s: float = 100.0
    mu: float = 0.1
    eta: float = 0.5
    lam: float = 1e-3
    n_design_freqs: int = 60
    steps_per_period: int = 200
    band_min: float = 0.0
    band_max: float = 200.0

    @property
    def omega0(self) -> float:
        """Carrier angular frequency (rad/s)."""
        return 2.0 * math.pi * self.f0_hz

    @property
    def tf_s(self) -> float:
        return self.tf_ms * MS


@dataclass(frozen=True)
class IonState:
    """Planar ion state in SI units."""

    x: float
    y: float
    vx: float
    vy: float
    omega_ion: float

    def __post_init__(self):
        vals = (self.x, self.y, self.vx, self.vy, self.omega_ion)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("ion state must be finite")
        if not self.omega_ion > 0:
            raise ValueError("cyclotron frequency must be positive")


@dataclass(frozen=True)
class RwaResult:
    """Rotating-frame velocity and derived position of one ion."""

    v_rot: complex
    x_rot: complex
    omega_ion: float


@dataclass(frozen=True)
class IcrObservables:
    """Orbit radius (mm) and rotating-frame phase (rad)."""

    r_mm: float
    phi_rad: float
    phase_defined: bool = True


@dataclass(frozen=True)
class IcrDesign:
    """Designed envelope with its dimensionless problem and quality report."""

    pulse: ExpSumPulse
    problem: OctProblem
    report: OctReport


def icr_target_profile(omega: float, cfg: IcrConfig,
                       t_f: float | None = None) -> complex:
    """Target endpoint: tanh radius cutoff with a linear phase ramp."""
    t_f = cfg.tf_ms if t_f is None else float(t_f)
    modulus = 0.5 * (1.0 + math.tanh((cfg.omega_s - omega) * cfg.mu))
    return modulus * complex(np.exp(1j * omega * cfg.eta * t_f))


def design_icr_pulse(cfg: IcrConfig = IcrConfig()) -> IcrDesign:
    """Penalised-endpoint design of the dimensionless excitation envelope."""
    grid = FrequencyGrid.regular(cfg.band_min, cfg.band_max, cfg.n_design_freqs)
    targets = np.array([icr_target_profile(w, cfg) for w in grid.omegas])
    problem = OctProblem(grid.omegas, targets, cfg.tf_ms, lam=cfg.lam)
    _, solution = solve_approach2(problem)
    pulse = pulse_approach2(solution, problem)
    report = self_consistency_check(problem, pulse)
    return IcrDesign(pulse, problem, report)


class PhysicalField:
    """SI drive e(t) = (E0/B0) u(t/ms) cos(omega_0 t), in m/s (E over B)."""

    def __init__(self, envelope: Pulse, cfg: IcrConfig):
        self.envelope_pulse = envelope
        self.cfg = cfg
        self.t_f_s = envelope.t_f * MS

    def envelope(self, t_s):
        """Envelope value at SI time (design units evaluated in ms)."""
        amp = self.cfg.e0_v_per_m / self.cfg.b0_tesla
        return amp * self.envelope_pulse.value(np.asarray(t_s) / MS)

    def __call__(self, t_s):
        t_s = np.asarray(t_s, dtype=float)
        return self.envelope(t_s) * np.cos(self.cfg.omega0 * t_s)


def envelope_to_physical(pulse: Pulse, cfg: IcrConfig) -> PhysicalField:
    """Wrap a dimensionless envelope as the SI drive field."""
    return PhysicalField(pulse, cfg)


# ---------------------------------------------------------------------------
# dynamics
# ---------------------------------------------------------------------------

def simulate_ions_full(field, omega_ions, t_f_s: float, dt: float,
                       f_carrier_hz: float) -> list[IonState]:
    """RK4 integration of the planar Lorentz dynamics for a batch of ions.

    All ions share the same drive, so the field table is precomputed on the
    half-step grid and the state advances as one (4, K) array.
    dt must resolve the carrier with at least 100 steps per period.
    """
    if dt > 1.0 / (100.0 * f_carrier_hz):
        raise ResolutionError(
            f"dt={dt:.3e} s too coarse: need >= 100 steps per carrier period "
            f"({1.0 / (100.0 * f_carrier_hz):.3e} s)"
        )
    om = np.atleast_1d(np.asarray(omega_ions, dtype=float))
    n = int(round(t_f_s / dt))
    h = t_f_s / n
    t_half = np.arange(2 * n + 1) * (h / 2.0)
    e_tab = np.asarray(field(t_half), dtype=float)

    x = np.zeros_like(om)
    y = np.zeros_like(om)
    vx = np.zeros_like(om)
    vy = np.zeros_like(om)

    def deriv(x_, y_, vx_, vy_, e):
        return vx_, vy_, om * (e + vy_), -om * vx_

    for k in range(n):
        e1, e2, e3 = e_tab[2 * k], e_tab[2 * k + 1], e_tab[2 * k + 2]
        k1 = deriv(x, y, vx, vy, e1)
        k2 = deriv(x + 0.5 * h * k1[0], y + 0.5 * h * k1[1],
                   vx + 0.5 * h * k1[2], vy + 0.5 * h * k1[3], e2)
        k3 = deriv(x + 0.5 * h * k2[0], y + 0.5 * h * k2[1],
                   vx + 0.5 * h * k2[2], vy + 0.5 * h * k2[3], e2)
        k4 = deriv(x + h * k3[0], y + h * k3[1],
                   vx + h * k3[2], vy + h * k3[3], e3)
        x = x + h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        y = y + h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        vx = vx + h / 6.0 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2])
        vy = vy + h / 6.0 * (k1[3] + 2 * k2[3] + 2 * k3[3] + k4[3])

    return [IonState(float(x[i]), float(y[i]), float(vx[i]), float(vy[i]),
                     float(om[i])) for i in range(len(om))]


def simulate_ion_full(field, omega_ion: float, t_f_s: float,
                      dt: float, f_carrier_hz: float | None = None) -> IonState:
    """Single-ion RK4 integration from rest at the trap centre."""
    if f_carrier_hz is None and isinstance(field, PhysicalField):
        f_carrier_hz = field.cfg.f0_hz
    if f_carrier_hz is None:
        raise ValueError("f_carrier_hz required for a bare field callable")
    return simulate_ions_full(field, [omega_ion], t_f_s, dt, f_carrier_hz)[0]


def simulate_ion_rwa(pulse: Pulse, delta_omega: float, cfg: IcrConfig) -> RwaResult:
    """Rotating-frame endpoint under the RWA via the spring propagator.

    delta_omega is the detuning in design units (rad/ms).  The conjugate of
    the rotating-frame velocity obeys the spring equation at the detuning,
    so V~(t_f) = scale * conj(z(delta_omega)) with
    scale = omega_0 (E0/B0) ms / 2 (the omega_k ~ omega_0 replacement of
    the design; the full simulation keeps the true omega_k).
    """
    if abs(delta_omega) / MS > 0.1 * cfg.omega0:
        warnings.warn(
            f"detuning {delta_omega} rad/ms exceeds 10% of the carrier; "
            "the rotating-wave approximation degrades",
            stacklevel=2,
        )
    z = propagate_exact(pulse, delta_omega, pulse.t_f)
    scale = cfg.omega0 * (cfg.e0_v_per_m / cfg.b0_tesla) * MS / 2.0
    v_rot = scale * np.conj(z)
    omega_ion = cfg.omega0 + delta_omega / MS
    return RwaResult(complex(v_rot), complex(1j * v_rot / cfg.omega0), omega_ion)


def icr_observables(result, cfg: IcrConfig) -> IcrObservables:
    """Orbit radius (mm) and rotating-frame velocity phase.

    The radius is speed over cyclotron frequency (the guiding-centre-free
    orbit radius); the full-dynamics phase comes from demodulating the
    velocity by exp(+i omega_0 t_f), matching the RWA observable.
    """
    if isinstance(result, RwaResult):
        v = result.v_rot
        omega_ion = result.omega_ion
    elif isinstance(result, IonState):
        v = (result.vx + 1j * result.vy) * np.exp(1j * cfg.omega0 * cfg.tf_s)
        omega_ion = result.omega_ion
    else:
        raise TypeError(f"unsupported result type {type(result).__name__}")
    speed = abs(v)
    if speed < 1e-300:
        return IcrObservables(0.0, 0.0, phase_defined=False)
    return IcrObservables(1e3 * speed / omega_ion, float(np.angle(v)))


def rwa_sweep(pulse: Pulse, cfg: IcrConfig, f_hz):
    """Radius (mm) and unwrapped phase (rad) vs ion frequency, RWA route."""
    f = np.atleast_1d(np.asarray(f_hz, dtype=float))
    r = np.empty_like(f)
    phi = np.empty_like(f)
    for i, fi in enumerate(f):
        dw = (2.0 * math.pi * fi - cfg.omega0) * MS
        obs = icr_observables(simulate_ion_rwa(pulse, dw, cfg), cfg)
        r[i] = obs.r_mm
        phi[i] = obs.phi_rad
    return r, np.unwrap(phi)


def full_sweep(field, cfg: IcrConfig, f_hz, steps_per_period: int | None = None):
    """Radius (mm) and unwrapped phase (rad) from the full Lorentz dynamics."""
    spp = cfg.steps_per_period if steps_per_period is None else steps_per_period
    if spp < 100:
        raise ResolutionError("steps_per_period must be >= 100")
    f = np.atleast_1d(np.asarray(f_hz, dtype=float))
    dt = 1.0 / (spp * cfg.f0_hz)
    states = simulate_ions_full(field, 2.0 * math.pi * f, cfg.tf_s, dt, cfg.f0_hz)
    obs = [icr_observables(s, cfg) for s in states]
    r = np.array([o.r_mm for o in obs])
    phi = np.unwrap(np.array([o.phi_rad for o in obs]))
    return r, phi


# ---------------------------------------------------------------------------
# adiabatic reference
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AdiabaticIcrReference:
    """Chirped reference excitation in SI units with its RWA sweep."""

    field: ChirpPulse
    f_hz: np.ndarray
    r_mm: np.ndarray
    phi_rad: np.ndarray


def adiabatic_icr_reference(cfg: IcrConfig,
                            f_i_hz: float = 480e3,
                            f_f_hz: float = 520e3,
                            e0_v_per_m: float = 625.0,
                            f_grid_hz=None) -> AdiabaticIcrReference:
    """Standard chirped excitation swept across the band, for comparison.

    The chirp reaches a comparable radius to the optimal design but its
    rotating-frame phase varies quadratically with frequency, not linearly.
    The returned `field` is the SI drive e(t) (amplitude E0/B0, rad/s, s).
    """
    wi = 2.0 * math.pi * f_i_hz
    wf = 2.0 * math.pi * f_f_hz
    sweep_rate = (wf - wi) / cfg.tf_s
    field = ChirpPulse(e0_v_per_m / cfg.b0_tesla, wi, sweep_rate, cfg.tf_s)

    if f_grid_hz is None:
        f_grid_hz = np.linspace(460e3, 540e3, 161)
    f = np.atleast_1d(np.asarray(f_grid_hz, dtype=float))
    amp = cfg.omega0 * e0_v_per_m / (2.0 * cfg.b0_tesla)
    r = np.empty_like(f)
    phi = np.empty_like(f)
    for i, fi in enumerate(f):
        omega_ion = 2.0 * math.pi * fi
        dw = omega_ion - cfg.omega0
        # conj(V~) follows the spring equation driven by the co-rotating
        # half of the chirp: a single quadratic-phase integral
        w_end = amp * np.exp(1j * dw * cfg.tf_s) * quadratic_phase_integral(
            sweep_rate / 2.0, (wi - cfg.omega0) - dw, cfg.tf_s)
        v_rot = np.conj(w_end)
        r[i] = 1e3 * abs(v_rot) / omega_ion
        phi[i] = np.angle(v_rot)
    return AdiabaticIcrReference(field, f, r, np.unwrap(phi))
