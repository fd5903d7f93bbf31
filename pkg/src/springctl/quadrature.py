"""Shared numerical helpers: stable sinc, elementary oscillatory integrals,
and composite Gauss-Legendre quadrature sized for oscillatory integrands."""

from __future__ import annotations

import math

import numpy as np

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def sinc(x):
    """sin(x)/x with sinc(0) = 1; Taylor branch below 1e-4 to avoid 0/0."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-4
    safe = np.where(small, 1.0, x)
    out = np.where(small, 1.0 - x * x / 6.0 + x**4 / 120.0, np.sin(safe) / safe)
    if out.ndim == 0:
        return float(out)
    return out


def phased_interval_integral(delta, t):
    """int_0^t exp(i delta tau) d tau = t exp(i delta t / 2) sinc(delta t / 2).

    Exact for every delta, including the resonant limit delta -> 0 where the
    naive (exp(i delta t) - 1)/(i delta) form degenerates to 0/0.
    """
    x = np.asarray(delta, dtype=float) * t / 2.0
    return t * np.exp(1j * x) * sinc(x)


def gauss_legendre_complex(f, a, b, n_panels):
    """Composite 16-node Gauss-Legendre quadrature of a complex integrand."""
    n_panels = max(1, int(n_panels))
    edges = np.linspace(a, b, n_panels + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    halves = 0.5 * np.diff(edges)
    # all nodes at once: shape (n_panels, 16)
    x = mids[:, None] + halves[:, None] * _GL_NODES[None, :]
    vals = f(x.ravel()).reshape(x.shape)
    return complex(np.sum(halves[:, None] * _GL_WEIGHTS[None, :] * vals))


def oscillatory_panel_count(omega_abs, span, extra=0):
    """Panels so a 16-node rule sees >= 20 points per oscillation."""
    per_osc = abs(omega_abs) * span / (2.0 * math.pi)
    return max(4, int(math.ceil(per_osc * 20.0 / 16.0)) + int(extra))


def converging_trapezoid(f, a, b, n0, rel_tol=1e-6, max_doublings=12):
    """Trapezoid value refined by grid doubling until the relative change
    drops below rel_tol (absolute fallback near zero)."""
    n = max(int(n0), 8)
    t = np.linspace(a, b, n + 1)
    prev = np.trapezoid(f(t), t)
    for _ in range(max_doublings):
        n *= 2
        t = np.linspace(a, b, n + 1)
        cur = np.trapezoid(f(t), t)
        if abs(cur - prev) <= rel_tol * max(abs(cur), 1e-300):
            return cur
        prev = cur
    return prev


def golden_section_max(f, a, b, tol=1e-12, max_iter=200):
    """Golden-section maximisation of a scalar function on [a, b]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = f(x1), f(x2)
    it = 0
    while (b - a) > tol and it < max_iter:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = f(x1)
        it += 1
    xm = 0.5 * (a + b)
    return xm, f(xm)
