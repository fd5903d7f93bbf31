"""Independent reference computations for the test suite.

Everything here deliberately avoids the library's closed forms: quadrature
is scipy's adaptive quad, ODEs are integrated by plain RK4, polynomial
derivatives are evaluated in exact rational arithmetic.  Tests compare the
library's fast paths against these slow-but-simple routes.
"""

import math
from fractions import Fraction

import numpy as np
import scipy.linalg
from scipy.integrate import quad
from scipy.optimize import minimize


def complex_quad(f, a, b, limit=800):
    re = quad(lambda x: np.real(f(x)), a, b, limit=limit)[0]
    im = quad(lambda x: np.imag(f(x)), a, b, limit=limit)[0]
    return complex(re, im)


def chunked_complex_quad(f, a, b, omega_scale=1.0):
    """Adaptive quad in oscillation-sized chunks (robust for long spans)."""
    n_chunks = max(1, int(abs(omega_scale) * (b - a) / (2 * math.pi)) // 4 + 1)
    edges = np.linspace(a, b, n_chunks + 1)
    return sum(complex_quad(f, lo, hi) for lo, hi in zip(edges[:-1], edges[1:]))


def quad_propagate(u, omega, t, bandwidth=1.0):
    """z(t) = int_0^t exp(i omega (t - tau)) u(tau) d tau by adaptive quad."""
    scale = max(abs(omega), bandwidth)
    integral = chunked_complex_quad(
        lambda tau: np.exp(-1j * omega * tau) * u(tau), 0.0, t, scale)
    return np.exp(1j * omega * t) * integral


def rk4_spring(u, omegas, t_f, n):
    """Plain RK4 for zdot = i omega z + u(t), z(0) = 0, batched over omegas.

    Times are index-based and clamped to t_f so that rounding never pushes
    an evaluation point past the pulse support (where pulses are zero by
    convention)."""
    om = np.atleast_1d(np.asarray(omegas, dtype=float))
    z = np.zeros(len(om), dtype=complex)
    h = t_f / n
    iw = 1j * om
    for k in range(n):
        t = k * h
        u1 = u(min(t, t_f))
        u2 = u(min(t + h / 2, t_f))
        u3 = u(min(t + h, t_f))
        k1 = iw * z + u1
        k2 = iw * (z + h / 2 * k1) + u2
        k3 = iw * (z + h / 2 * k2) + u2
        k4 = iw * (z + h * k3) + u3
        z = z + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return z if np.ndim(omegas) else z[0]


def rk4_bloch(u, omega, t_f, n, r0=(0.0, 0.0, 1.0)):
    """Plain RK4 for the Bloch equations (independent of the rotation code)."""
    r = np.asarray(r0, dtype=float).copy()

    def deriv(r_, t_):
        x, y, z = r_
        ut = u(min(t_, t_f))
        return np.array([-omega * y + ut * z, omega * x, -ut * x])

    h = t_f / n
    for k in range(n):
        t = k * h
        k1 = deriv(r, t)
        k2 = deriv(r + h / 2 * k1, t + h / 2)
        k3 = deriv(r + h / 2 * k2, t + h / 2)
        k4 = deriv(r + h * k3, t + h)
        r = r + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return r


def fraction_poly_derivative_value(frac_coeffs, t_f, order, t):
    """Exact derivative value of sum a_j (t/t_f)^j at rational t.

    frac_coeffs: exact Fractions; t must be exactly representable
    (int, Fraction, or float).  Returns a Fraction.
    """
    coeffs = list(frac_coeffs)
    tf = Fraction(t_f)
    for _ in range(order):
        coeffs = [coeffs[j] * j / tf for j in range(1, len(coeffs))]
        if not coeffs:
            return Fraction(0)
    s = Fraction(t) / tf
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * s + c
    return acc


def expm_endpoint(a, b, u, t_f, n):
    """x(t_f) for x' = Ax + Bu from x(0)=0, exponential-midpoint rule."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    b = np.asarray(b, dtype=float)
    if b.ndim == 1:
        b = b[:, None]
    h = t_f / n
    ea = scipy.linalg.expm(a * h)
    eh = scipy.linalg.expm(a * (h / 2.0))
    x = np.zeros(a.shape[0])
    for k in range(n):
        t_mid = (k + 0.5) * h
        x = ea @ x + h * (eh @ (b @ np.atleast_1d(u(t_mid))))
    return x


def minimize_penalised_cost(omega, target, t_f, lam, n_seg=200):
    """Brute-force minimiser of the endpoint-penalty cost over piecewise-
    constant fields.  Returns (segment values, endpoint, cost)."""
    edges = np.linspace(0.0, t_f, n_seg + 1)
    # exact per-segment response  int_seg exp(i w (t_f - tau)) d tau
    if omega == 0.0:
        seg = np.diff(edges).astype(complex)
    else:
        seg = (np.exp(1j * omega * (t_f - edges[:-1]))
               - np.exp(1j * omega * (t_f - edges[1:]))) / (1j * omega)
    h = t_f / n_seg

    def cost(uvec):
        z = np.dot(uvec, seg)
        return (0.5 * abs(z - target) ** 2
                + 0.5 * lam * float(np.sum(uvec**2)) * h)

    res = minimize(cost, np.zeros(n_seg), method="L-BFGS-B",
                   options={"maxiter": 2000, "ftol": 1e-15, "gtol": 1e-12})
    u = res.x
    return u, np.dot(u, seg), cost(u)
