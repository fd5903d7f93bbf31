"""Control-pulse representations.

Four concrete forms cover every synthesis route in the library:

* `ChirpPulse`      -- u(t) = u0 cos(omega_i t + s t^2 / 2)
* `ExpSumPulse`     -- u(t) = sum_k Re[c_k exp(i omega_k t)]
* `PolyDerivSumPulse` -- u(t) = sum_k c_k g^(k)(t) for a flat-output
  polynomial g (derivative-stacked form of inverse-engineered fields)
* `SampledPulse`    -- values on a uniform grid, linear interpolation

All pulses evaluate to 0 outside [0, t_f] by convention, are immutable
after construction, and support amplitude scaling and (where the forms are
closed under it) addition.
"""

from __future__ import annotations

import math

import numpy as np

from .polynomial import Polynomial


class Pulse:
    """Base class: a control field on [0, t_f]."""

    t_f: float

    def value(self, t):
        """Field value at time t (scalar or array); zero outside [0, t_f]."""
        raise NotImplementedError

    def __call__(self, t):
        return self.value(t)

    def scaled(self, factor: float) -> "Pulse":
        raise NotImplementedError

    def bandwidth_hint(self) -> float:
        """Rough largest angular frequency present; used to size quadratures."""
        raise NotImplementedError

    def _mask(self, t, values):
        t = np.asarray(t, dtype=float)
        inside = (t >= 0.0) & (t <= self.t_f)
        out = np.where(inside, values, 0.0)
        if t.ndim == 0:
            return float(out)
        return out


class ChirpPulse(Pulse):
    """Linear-sweep cosine drive u0 cos(omega_i t + sweep_rate t^2 / 2)."""

    def __init__(self, u0, omega_i, sweep_rate, t_f):
        if not t_f > 0:
            raise ValueError("t_f must be positive")
        self.u0 = float(u0)
        self.omega_i = float(omega_i)
        self.sweep_rate = float(sweep_rate)
        self.t_f = float(t_f)

    @property
    def omega_f(self):
        return self.omega_i + self.sweep_rate * self.t_f

    def value(self, t):
        t_arr = np.asarray(t, dtype=float)
        phase = self.omega_i * t_arr + 0.5 * self.sweep_rate * t_arr**2
        return self._mask(t, self.u0 * np.cos(phase))

    def scaled(self, factor):
        return ChirpPulse(self.u0 * factor, self.omega_i, self.sweep_rate, self.t_f)

    def bandwidth_hint(self):
        return max(abs(self.omega_i), abs(self.omega_f), 1.0 / self.t_f)

    def __repr__(self):
        return (f"ChirpPulse(u0={self.u0}, omega_i={self.omega_i}, "
                f"sweep_rate={self.sweep_rate}, t_f={self.t_f})")


class ExpSumPulse(Pulse):
    """Sum of rotating terms: u(t) = sum_k Re[c_k exp(i omega_k t)]."""

    def __init__(self, coefficients, omegas, t_f):
        c = np.asarray(coefficients, dtype=complex)
        w = np.asarray(omegas, dtype=float)
        if c.shape != w.shape or c.ndim != 1:
            raise ValueError("coefficients and omegas must be 1-d and equal-length")
        if not t_f > 0:
            raise ValueError("t_f must be positive")
        self.coefficients = c
        self.omegas = w
        self.coefficients.setflags(write=False)
        self.omegas.setflags(write=False)
        self.t_f = float(t_f)

    def value(self, t):
        t_arr = np.atleast_1d(np.asarray(t, dtype=float))
        phases = np.exp(1j * np.outer(t_arr, self.omegas))
        vals = np.real(phases @ self.coefficients)
        if np.ndim(t) == 0:
            return self._mask(t, vals[0])
        return self._mask(t, vals)

    def scaled(self, factor):
        return ExpSumPulse(self.coefficients * factor, self.omegas, self.t_f)

    def __add__(self, other):
        if isinstance(other, ExpSumPulse) and other.t_f == self.t_f:
            return ExpSumPulse(
                np.concatenate([self.coefficients, other.coefficients]),
                np.concatenate([self.omegas, other.omegas]),
                self.t_f,
            )
        return NotImplemented

    def bandwidth_hint(self):
        return max(float(np.max(np.abs(self.omegas), initial=0.0)), 1.0 / self.t_f)

    def __repr__(self):
        return f"ExpSumPulse(n_terms={len(self.omegas)}, t_f={self.t_f})"


class PolyDerivSumPulse(Pulse):
    """Derivative-stacked polynomial field u(t) = sum_k c_k g^(k)(t).

    The coefficients c_k are typically the characteristic-polynomial
    coefficients of the controlled linear system and g its flat output.
    The summed field itself is a polynomial; it is assembled once in exact
    arithmetic (see `Polynomial`) so that high-degree designs evaluate and
    integrate to full double precision.
    """

    def __init__(self, g: Polynomial, coefficients):
        self.g = g
        self.coefficients = tuple(float(c) for c in coefficients)
        self.t_f = g.t_f
        u = Polynomial([0.0], g.t_f)
        for k, ck in enumerate(self.coefficients):
            if ck != 0.0:
                u = u + g.derivative(k).scaled(ck)
        self._field_poly = u

    @property
    def field_polynomial(self) -> Polynomial:
        """The summed field as a plain polynomial (exact coefficients)."""
        return self._field_poly

    def value(self, t):
        return self._mask(t, self._field_poly.value(np.asarray(t, dtype=float)))

    def scaled(self, factor):
        return PolyDerivSumPulse(self.g, [c * factor for c in self.coefficients])

    def __add__(self, other):
        # any polynomial field is a derivative sum with a single k=0 term
        if isinstance(other, PolyDerivSumPulse) and other.t_f == self.t_f:
            return PolyDerivSumPulse(
                self._field_poly + other._field_poly, [1.0]
            )
        return NotImplemented

    def bandwidth_hint(self):
        # a degree-d polynomial on [0, t_f] oscillates at most ~d/2 times
        return max(math.pi * self._field_poly.degree / self.t_f, 1.0 / self.t_f)

    def __repr__(self):
        return (f"PolyDerivSumPulse(degree={self._field_poly.degree}, "
                f"n_coeffs={len(self.coefficients)}, t_f={self.t_f})")


class SampledPulse(Pulse):
    """Uniformly sampled field; linear interpolation between samples."""

    def __init__(self, times, values):
        t = np.asarray(times, dtype=float)
        v = np.asarray(values, dtype=float)
        if t.ndim != 1 or t.shape != v.shape or len(t) < 2:
            raise ValueError("need matching 1-d times/values with >= 2 samples")
        dt = np.diff(t)
        if t[0] != 0.0 or np.any(dt <= 0):
            raise ValueError("times must start at 0 and increase")
        if not np.allclose(dt, dt[0], rtol=1e-9, atol=0.0):
            raise ValueError("times must be uniformly spaced")
        self.times = t
        self.values = v
        self.times.setflags(write=False)
        self.values.setflags(write=False)
        self.t_f = float(t[-1])

    def value(self, t):
        vals = np.interp(np.asarray(t, dtype=float), self.times, self.values)
        return self._mask(t, vals)

    def scaled(self, factor):
        return SampledPulse(self.times, self.values * factor)

    def __add__(self, other):
        if (isinstance(other, SampledPulse) and len(other.times) == len(self.times)
                and np.array_equal(other.times, self.times)):
            return SampledPulse(self.times, self.values + other.values)
        return NotImplemented

    def bandwidth_hint(self):
        # Nyquist limit of the sample grid
        return math.pi / (self.times[1] - self.times[0])

    def __repr__(self):
        return f"SampledPulse(n={len(self.times)}, t_f={self.t_f})"


class ZeroPulse(Pulse):
    """The identically zero field (convenience)."""

    def __init__(self, t_f):
        if not t_f > 0:
            raise ValueError("t_f must be positive")
        self.t_f = float(t_f)

    def value(self, t):
        return self._mask(t, np.zeros_like(np.asarray(t, dtype=float)))

    def scaled(self, factor):
        return ZeroPulse(self.t_f)

    def bandwidth_hint(self):
        return 1.0 / self.t_f


def sample_pulse(pulse: Pulse, n_points: int) -> SampledPulse:
    """Sample a pulse on an endpoint-inclusive uniform grid."""
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    times = np.linspace(0.0, pulse.t_f, int(n_points))
    return SampledPulse(times, pulse.value(times))
