"""Real polynomials in the normalised time s = t/t_f.

Flat-output constructions produce polynomials whose monomial coefficients
span many orders of magnitude (the worst designs here reach ~1e14 at double
precision scale).  Naive Horner evaluation of such polynomials, and any
float-only basis change, loses most significant digits.  To keep every
downstream quantity accurate, a `Polynomial` carries its coefficients as
exact `Fraction`s and converts them once, in exact arithmetic, to a
Chebyshev series on [0, t_f]; evaluation then runs through a numerically
benign Clenshaw recurrence.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import numpy.polynomial.chebyshev as _cheb


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, np.integer)):
        return Fraction(int(c))
    return Fraction(float(c))


def _frac_to_cheb(fracs):
    """Exact monomial(s on [0,1]) -> Chebyshev(x = 2s - 1) conversion."""
    n = len(fracs)
    # Taylor shift s = (x + 1)/2
    b = [Fraction(0)] * n
    for m, a in enumerate(fracs):
        if a:
            inv = Fraction(1, 2**m)
            for j in range(m + 1):
                b[j] += a * math.comb(m, j) * inv
    # x^m = 2^(1-m) * sum'' C(m, (m-k)/2) T_k, k = m, m-2, ..., k=0 term halved
    c = [Fraction(0)] * n
    for m, bm in enumerate(b):
        if not bm:
            continue
        if m == 0:
            c[0] += bm
            continue
        scale = Fraction(1, 2 ** (m - 1))
        for k in range(m, -1, -2):
            coef = Fraction(math.comb(m, (m - k) // 2)) * scale
            if k == 0:
                coef /= 2
            c[k] += bm * coef
    return np.array([float(x) for x in c])


class Polynomial:
    """Polynomial sum_j a_j (t/t_f)^j with exact-rational coefficient core.

    Parameters
    ----------
    coeffs : sequence of float, int or Fraction
        Ascending coefficients a_0 .. a_d in the variable s = t/t_f.
    t_f : float
        Time scale; derivatives are with respect to t (chain factor 1/t_f
        per order).
    """

    __slots__ = ("_frac", "coeffs", "t_f", "_cheb_cache")

    def __init__(self, coeffs, t_f):
        frac = [_as_fraction(c) for c in coeffs]
        while len(frac) > 1 and frac[-1] == 0:
            frac.pop()
        self._frac = tuple(frac)
        self.coeffs = np.array([float(c) for c in self._frac])
        self.coeffs.setflags(write=False)
        self.t_f = float(t_f)
        if not (self.t_f > 0 and math.isfinite(self.t_f)):
            raise ValueError(f"t_f must be positive and finite, got {t_f!r}")
        self._cheb_cache = None

    @property
    def degree(self) -> int:
        return len(self._frac) - 1

    @property
    def fractions(self):
        """Exact coefficient tuple (read-only)."""
        return self._frac

    def _chebyshev(self):
        if self._cheb_cache is None:
            self._cheb_cache = _frac_to_cheb(list(self._frac))
        return self._cheb_cache

    def value(self, t):
        """Evaluate at time t (scalar or array)."""
        t_arr = np.asarray(t, dtype=float)
        x = 2.0 * t_arr / self.t_f - 1.0
        out = _cheb.chebval(x, self._chebyshev())
        # endpoints from the exact coefficients: boundary-condition checks of
        # high-degree designs need them to full precision
        if t_arr.ndim == 0:
            if t_arr == 0.0:
                return float(self._frac[0])
            if t_arr == self.t_f:
                return float(sum(self._frac))
            return float(out)
        out = np.asarray(out, dtype=float)
        if np.any(t_arr == 0.0) or np.any(t_arr == self.t_f):
            out = out.copy()
            out[t_arr == 0.0] = float(self._frac[0])
            out[t_arr == self.t_f] = float(sum(self._frac))
        return out

    __call__ = value

    def derivative(self, order: int = 1) -> "Polynomial":
        """Exact derivative of the given order (with the 1/t_f chain factor)."""
        if order < 0:
            raise ValueError("order must be >= 0")
        frac = list(self._frac)
        tf = Fraction(self.t_f)
        for _ in range(order):
            frac = [frac[i] * i / tf for i in range(1, len(frac))]
            if not frac:
                frac = [Fraction(0)]
        return Polynomial(frac, self.t_f)

    def derivative_value(self, t, order: int):
        return self.derivative(order).value(t)

    def scaled(self, factor) -> "Polynomial":
        f = _as_fraction(factor)
        return Polynomial([c * f for c in self._frac], self.t_f)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.t_f != self.t_f:
            raise ValueError("cannot add polynomials with different t_f")
        n = max(len(self._frac), len(other._frac))
        a = list(self._frac) + [Fraction(0)] * (n - len(self._frac))
        b = list(other._frac) + [Fraction(0)] * (n - len(other._frac))
        return Polynomial([x + y for x, y in zip(a, b)], self.t_f)

    def __mul__(self, factor):
        return self.scaled(factor)

    __rmul__ = __mul__

    def __repr__(self):
        return f"Polynomial(degree={self.degree}, t_f={self.t_f})"
