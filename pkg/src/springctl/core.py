"""Shared domain types, exact spring propagation, spectral integrals and
pulse metrics.

A "spring" of frequency omega is the driven oscillator

    zdot = i omega z + u(t),        z = x + i y,  z(0) = 0,

whose explicit solution is z(t) = int_0^t exp(i omega (t - tau)) u(tau) dtau.
`propagate_exact` evaluates that integral in closed form for every analytic
pulse type and by aligned composite quadrature for sampled data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import adiabatic as _adiabatic
from .errors import PropagationError
from .pulses import (ChirpPulse, ExpSumPulse, PolyDerivSumPulse, Pulse,
                     SampledPulse, ZeroPulse, sample_pulse)
from .polynomial import Polynomial
from .quadrature import (converging_trapezoid, gauss_legendre_complex,
                         golden_section_max, oscillatory_panel_count,
                         phased_interval_integral)

__all__ = [
    "SpringState", "FrequencyGrid", "EnsembleProblem",
    "propagate_exact", "moment_integrals", "distance_to_target",
    "polynomial_spectral_integral", "pulse_energy", "pulse_max_amplitude",
    "sample_pulse",
]


@dataclass(frozen=True)
class SpringState:
    """State of one spring: z = x + i y (velocity-like x, position-like y)."""

    z: complex

    @property
    def x(self) -> float:
        return self.z.real

    @property
    def y(self) -> float:
        return self.z.imag


@dataclass(frozen=True)
class FrequencyGrid:
    """Strictly increasing list of spring frequencies."""

    omegas: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.omegas, dtype=float)
        if w.ndim != 1 or len(w) == 0:
            raise ValueError("omegas must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(w)):
            raise ValueError("omegas must be finite")
        if len(w) > 1 and not np.all(np.diff(w) > 0):
            raise ValueError("omegas must be strictly increasing")
        w.setflags(write=False)
        object.__setattr__(self, "omegas", w)

    @classmethod
    def regular(cls, omega_min, omega_max, n):
        """Endpoint-inclusive regular grid (the default convention)."""
        if n == 1:
            return cls(np.array([0.5 * (omega_min + omega_max)]))
        return cls(np.linspace(omega_min, omega_max, int(n)))

    @classmethod
    def midpoint(cls, omega_min, omega_max, n):
        """Midpoint grid: omega_k at the centres of n equal sub-intervals."""
        edges = np.linspace(omega_min, omega_max, int(n) + 1)
        return cls(0.5 * (edges[:-1] + edges[1:]))

    def __len__(self):
        return len(self.omegas)

    def __iter__(self):
        return iter(self.omegas)


@dataclass(frozen=True)
class EnsembleProblem:
    """Frequency grid with per-frequency complex targets and a horizon."""

    grid: FrequencyGrid
    targets: np.ndarray
    t_f: float

    def __post_init__(self):
        z = np.asarray(self.targets, dtype=complex)
        if z.shape != (len(self.grid),):
            raise ValueError(
                f"need one target per frequency: {z.shape} vs {len(self.grid)}"
            )
        z.setflags(write=False)
        object.__setattr__(self, "targets", z)
        if not self.t_f > 0:
            raise ValueError("t_f must be positive")


def moment_integrals(m_max: int, omega: float, t_f: float) -> np.ndarray:
    """Moments M_m = int_0^{t_f} tau^m exp(-i omega tau) d tau, m = 0..m_max.

    Upward recurrence M_m = i (t_f^m e^{-i omega t_f} - m M_{m-1}) / omega is
    used while |omega t_f| >= m (each step then damps rounding error); below
    that switch the endpoint-anchored power series in omega

        M_m = t_f^{m+1} e^{-i r} / (m+1) * sum_k prod_{j<=k} (i r / (m+1+j))

    with r = omega t_f takes over.  Both branches agree to ~1e-15 at the
    switch point.
    """
    if m_max < 0:
        raise ValueError("m_max must be >= 0")
    t = float(t_f)
    r = omega * t
    e = np.exp(-1j * r)
    out = np.empty(m_max + 1, dtype=complex)
    for m in range(m_max + 1):
        if abs(r) >= max(m, 1):
            if m == 0:
                out[0] = (1.0 - e) / (1j * omega)
            else:
                out[m] = 1j * (t**m * e - m * out[m - 1]) / omega
        else:
            out[m] = _moment_series(m, r) * t ** (m + 1) * e / (m + 1)
    return out


def _moment_series(m, r):
    term = 1.0 + 0j
    acc = term
    for k in range(1, 400):
        term *= (1j * r) / (m + 1 + k)
        acc += term
        if abs(term) <= 1e-20 * abs(acc):
            break
    return acc


def distance_to_target(z: complex, z_target: complex) -> float:
    """Euclidean distance |z - z_target| in the (x, y) plane."""
    return abs(complex(z) - complex(z_target))


# ---------------------------------------------------------------------------
# propagation
# ---------------------------------------------------------------------------

def propagate_exact(pulse: Pulse, omega: float, t: float | None = None) -> complex:
    """Final spring state z_omega(t) for a zero initial condition.

    Closed forms: chirps go through the complex-error-function machinery,
    exponential sums through elementary phased-interval integrals with a
    stable resonant limit, polynomial fields through exact moment integrals
    (falling back to aligned Gauss-Legendre panels when the monomial
    coefficient spread would amplify rounding).  Sampled pulses use
    composite Gauss quadrature on the interpolant, panels aligned with the
    sample grid.
    """
    t = pulse.t_f if t is None else float(t)
    if not (0.0 <= t <= pulse.t_f * (1 + 1e-12)):
        raise ValueError(f"t must lie in [0, t_f]; got {t} with t_f={pulse.t_f}")
    t = min(t, pulse.t_f)
    if t == 0.0:
        return 0.0 + 0.0j

    if isinstance(pulse, ZeroPulse):
        z = 0.0 + 0.0j
    elif isinstance(pulse, ExpSumPulse):
        z = _propagate_expsum(pulse, omega, t)
    elif isinstance(pulse, ChirpPulse):
        z = _adiabatic.chirp_spectral_integral(pulse, omega, t)
        z *= np.exp(1j * omega * t)
    elif isinstance(pulse, PolyDerivSumPulse):
        z = _propagate_polynomial(pulse.field_polynomial, omega, t)
    elif isinstance(pulse, SampledPulse):
        z = _propagate_sampled(pulse, omega, t)
    else:
        z = _propagate_generic(pulse, omega, t)

    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise PropagationError(omega, f"non-finite state {z!r}")
    return complex(z)


def _propagate_expsum(pulse: ExpSumPulse, omega, t):
    acc = 0.0 + 0.0j
    for c, wk in zip(pulse.coefficients, pulse.omegas):
        acc += 0.5 * c * phased_interval_integral(wk - omega, t)
        acc += 0.5 * np.conj(c) * phased_interval_integral(-wk - omega, t)
    return np.exp(1j * omega * t) * acc


def polynomial_spectral_integral(poly: Polynomial, omega: float, t: float) -> complex:
    """int_0^t exp(-i omega tau) p(tau) d tau, stable for any degree.

    Exact moment integrals are used whenever the monomial coefficient
    spread keeps their rounding below 1e-10; otherwise (high-degree
    flat-output fields, whose coefficients span ~14 decades) the integral
    falls back to aligned Gauss-Legendre panels on the Chebyshev-backed
    evaluation, which stays accurate to ~1e-13 at any degree.
    """
    c = poly.coeffs
    tf = poly.t_f
    j = np.arange(len(c))
    scale = np.abs(c) * t ** (j + 1) / ((j + 1) * tf**j)
    err_bound = 2.3e-16 * float(np.sum(scale))
    if err_bound <= 1e-10 * max(1.0, t):
        M = moment_integrals(len(c) - 1, omega, t)
        return complex(np.sum((c / tf**j) * M))
    panels = oscillatory_panel_count(omega, t, extra=poly.degree // 12)
    return gauss_legendre_complex(
        lambda tau: np.exp(-1j * omega * tau) * poly.value(tau), 0.0, t, panels
    )


def _propagate_polynomial(poly: Polynomial, omega, t):
    return np.exp(1j * omega * t) * polynomial_spectral_integral(poly, omega, t)


def _propagate_sampled(pulse: SampledPulse, omega, t):
    h = pulse.times[1] - pulse.times[0]
    # panels aligned with the sample grid (the interpolant has kinks there);
    # subdivide further when a sample interval spans too much phase
    sub = max(1, int(math.ceil(abs(omega) * h / 1.0)))
    edges = [0.0]
    for tk in pulse.times[1:]:
        tk = min(float(tk), t)
        if tk <= edges[-1]:
            continue
        left = edges[-1]
        for i in range(1, sub + 1):
            edges.append(left + (tk - left) * i / sub)
        if tk >= t:
            break
    if edges[-1] < t:
        edges.append(t)
    edges = np.asarray(edges)

    nodes, weights = np.polynomial.legendre.leggauss(6)
    mids = 0.5 * (edges[:-1] + edges[1:])
    halves = 0.5 * np.diff(edges)
    x = mids[:, None] + halves[:, None] * nodes[None, :]
    vals = pulse.value(x.ravel()).reshape(x.shape) * np.exp(-1j * omega * x)
    integral = np.sum(halves[:, None] * weights[None, :] * vals)
    return np.exp(1j * omega * t) * integral


def _propagate_generic(pulse: Pulse, omega, t):
    panels = oscillatory_panel_count(max(abs(omega), pulse.bandwidth_hint()), t)
    integral = gauss_legendre_complex(
        lambda tau: np.exp(-1j * omega * tau) * pulse.value(tau), 0.0, t, panels
    )
    return np.exp(1j * omega * t) * integral


# ---------------------------------------------------------------------------
# pulse metrics
# ---------------------------------------------------------------------------

def pulse_energy(pulse: Pulse) -> float:
    """E = int_0^{t_f} u(t)^2 dt by grid-doubling quadrature (rel. 1e-6)."""
    osc = pulse.bandwidth_hint() * pulse.t_f / (2.0 * math.pi)
    n0 = max(4096, 32 * int(math.ceil(osc)))
    val = converging_trapezoid(lambda t: pulse.value(t) ** 2, 0.0, pulse.t_f, n0)
    return float(val)


def pulse_max_amplitude(pulse: Pulse, n_grid: int = 10001) -> float:
    """max_t |u(t)| from a dense scan refined by golden-section search."""
    osc = pulse.bandwidth_hint() * pulse.t_f / (2.0 * math.pi)
    n = max(int(n_grid), 16 * int(math.ceil(osc)) + 1)
    t = np.linspace(0.0, pulse.t_f, n)
    mag = np.abs(pulse.value(t))
    i = int(np.argmax(mag))
    lo = t[max(i - 1, 0)]
    hi = t[min(i + 1, n - 1)]
    if hi > lo:
        _, refined = golden_section_max(
            lambda x: abs(pulse.value(x)), lo, hi, tol=1e-12 * pulse.t_f
        )
    else:
        refined = mag[i]
    return float(max(refined, mag[i], mag[0], mag[-1]))
