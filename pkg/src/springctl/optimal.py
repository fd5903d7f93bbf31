"""Linear-quadratic optimal control of finite spring ensembles.

Two first-order formulations of the energy-penalised steering problem:

* Approach I  -- hit every target exactly while minimising int u^2 dt.
  The optimal field is u*(t) = sum_k Re[p_k(0) exp(i omega_k t)] and the
  initial adjoint constants solve a sinc-kernel linear system.
* Approach II -- trade endpoint error against energy through a penalty
  weight lam: minimise sum_k |z_k(t_f) - z_k^f|^2 / 2 + (lam/2) int u^2 dt.
  Here the endpoint states solve the kernel system and the adjoints are
  the residuals p_k(t_f) = z_k^f - z_k(t_f).

Both systems couple p and conj(p), so they are real-linear: they are
solved as stacked 2N x 2N real systems.  Grids containing omega = 0 or
closely spaced frequencies make the kernels nearly singular (an effect the
endpoint grids of the published comparison do exhibit); the solver then
switches to a minimum-norm least-squares solution, records the condition
estimate, and warns rather than failing, since the minimum-norm solution
still reproduces the published pulses.  Exactly duplicated frequencies in
Approach I are rejected outright.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .core import propagate_exact, pulse_energy, pulse_max_amplitude
from .errors import InvalidPenaltyError, NearSingularError
from .pulses import ExpSumPulse, Pulse
from .quadrature import phased_interval_integral, sinc

__all__ = [
    "OctProblem", "AdjointSolution", "OctReport",
    "kernel_matrices_I", "kernel_matrices_II",
    "solve_approach1", "pulse_approach1",
    "solve_approach2", "pulse_approach2",
    "self_consistency_check", "expsum_energy_exact",
]

CONDITION_WARN = 1e10


@dataclass(frozen=True)
class OctProblem:
    """Steering targets for N springs over a fixed horizon.

    lam is the Approach-II energy weight; leave it None for Approach I.
    """

    omegas: np.ndarray
    targets: np.ndarray
    t_f: float
    lam: float | None = None

    def __post_init__(self):
        w = np.atleast_1d(np.asarray(self.omegas, dtype=float))
        z = np.atleast_1d(np.asarray(self.targets, dtype=complex))
        if w.shape != z.shape:
            raise ValueError("omegas and targets must have matching lengths")
        if not self.t_f > 0:
            raise ValueError("t_f must be positive")
        if self.lam is not None and not self.lam > 0:
            raise InvalidPenaltyError(f"penalty weight must be > 0, got {self.lam}")
        w.setflags(write=False)
        z.setflags(write=False)
        object.__setattr__(self, "omegas", w)
        object.__setattr__(self, "targets", z)

    @property
    def n(self) -> int:
        return len(self.omegas)


@dataclass(frozen=True)
class AdjointSolution:
    """Solved adjoint constants with solve diagnostics.

    p holds p_k(0) for Approach I and p_k(t_f) for Approach II.
    """

    p: np.ndarray
    residual: float
    condition_estimate: float
    near_singular: bool


def kernel_matrices_I(omegas, t_f):
    """Exact-endpoint kernels A_jk, B_jk of the Approach-I system.

    A_jk = exp[i(w_j+w_k)t_f/2] sinc[(w_j-w_k)t_f/2],
    B_jk = exp[i(w_j-w_k)t_f/2] sinc[(w_j+w_k)t_f/2].
    """
    w = np.atleast_1d(np.asarray(omegas, dtype=float))
    J, K = np.meshgrid(w, w, indexing="ij")
    a = np.exp(1j * (J + K) * t_f / 2.0) * sinc((J - K) * t_f / 2.0)
    b = np.exp(1j * (J - K) * t_f / 2.0) * sinc((J + K) * t_f / 2.0)
    return a, b


def kernel_matrices_II(omegas, t_f):
    """Penalised-endpoint kernels C_jk, D_jk of the Approach-II system."""
    w = np.atleast_1d(np.asarray(omegas, dtype=float))
    J, K = np.meshgrid(w, w, indexing="ij")
    c = np.exp(1j * (J - K) * t_f / 2.0) * sinc((J - K) * t_f / 2.0)
    d = np.exp(1j * (J + K) * t_f / 2.0) * sinc((J + K) * t_f / 2.0)
    return c, d


def _solve_stacked(m_real, rhs, context):
    """Min-norm solve of the stacked real system with diagnostics."""
    sol, _, _, sv = np.linalg.lstsq(m_real, rhs, rcond=None)
    cond = float(sv[0] / sv[-1]) if sv[-1] > 0 else float("inf")
    residual = float(np.linalg.norm(m_real @ sol - rhs))
    scale = max(float(np.linalg.norm(rhs)), 1e-300)
    near = cond > CONDITION_WARN
    if near:
        warnings.warn(
            f"{context}: system condition estimate {cond:.2e} exceeds "
            f"{CONDITION_WARN:.0e}; using the minimum-norm solution",
            stacklevel=3,
        )
    elif residual > 1e-8 * scale:
        raise NearSingularError(cond, f"{context}: inconsistent system, "
                                      f"residual {residual:.3e}")
    return sol, residual, cond, near


def solve_approach1(problem: OctProblem) -> AdjointSolution:
    """Initial adjoints p_k(0) for the exact-endpoint minimum-energy field.

    (2/t_f) z_j^f = sum_k A_jk p_k(0) + B_jk conj(p_k(0)).
    """
    w = problem.omegas
    if len(np.unique(w)) != len(w):
        raise NearSingularError(float("inf"), "duplicated frequencies give "
                                              "identical kernel rows")
    n = problem.n
    a, b = kernel_matrices_I(w, problem.t_f)
    m = np.zeros((2 * n, 2 * n))
    m[:n, :n] = (a + b).real
    m[:n, n:] = (b - a).imag
    m[n:, :n] = (a + b).imag
    m[n:, n:] = (a - b).real
    rhs_c = (2.0 / problem.t_f) * problem.targets
    rhs = np.concatenate([rhs_c.real, rhs_c.imag])
    sol, residual, cond, near = _solve_stacked(m, rhs, "approach I")
    return AdjointSolution(sol[:n] + 1j * sol[n:], residual, cond, near)


def pulse_approach1(solution: AdjointSolution, omegas, t_f: float) -> ExpSumPulse:
    """Optimal field u*(t) = sum_k Re[p_k(0) exp(i omega_k t)]."""
    w = np.atleast_1d(np.asarray(omegas, dtype=float))
    return ExpSumPulse(solution.p, w, t_f)


def self_consistency_check(problem: OctProblem, pulse: Pulse) -> "OctReport":
    """Propagate a synthesised field and report how well it does."""
    endpoints = np.array([propagate_exact(pulse, w, problem.t_f)
                          for w in problem.omegas])
    errors = np.abs(endpoints - problem.targets)
    energy = (expsum_energy_exact(pulse) if isinstance(pulse, ExpSumPulse)
              else pulse_energy(pulse))
    cost = None
    if problem.lam is not None:
        cost = 0.5 * float(np.sum(errors**2)) + 0.5 * problem.lam * energy
    return OctReport(
        omegas=problem.omegas,
        endpoints=endpoints,
        endpoint_errors=errors,
        energy=float(energy),
        max_amplitude=pulse_max_amplitude(pulse),
        cost=cost,
    )


@dataclass(frozen=True)
class OctReport:
    """Self-consistency summary for a synthesised field."""

    omegas: np.ndarray
    endpoints: np.ndarray
    endpoint_errors: np.ndarray
    energy: float
    max_amplitude: float
    cost: float | None


def expsum_energy_exact(pulse: ExpSumPulse) -> float:
    """Closed-form int u^2 dt for an exponential-sum field."""
    c = pulse.coefficients
    w = pulse.omegas
    t = pulse.t_f
    total = 0.0 + 0.0j
    for j in range(len(c)):
        for k in range(len(c)):
            total += c[j] * c[k] * phased_interval_integral(w[j] + w[k], t)
            total += c[j] * np.conj(c[k]) * phased_interval_integral(w[j] - w[k], t)
            total += np.conj(c[j]) * c[k] * phased_interval_integral(w[k] - w[j], t)
            total += np.conj(c[j] * c[k]) * phased_interval_integral(-w[j] - w[k], t)
    return float(0.25 * total.real)


def solve_approach2(problem: OctProblem):
    """Endpoint states and final adjoints of the penalised problem.

    Solves (2 lam / t_f) z_j + sum_k [C_jk z_k + D_jk conj(z_k)] =
    sum_k [C_jk z_k^f + D_jk conj(z_k^f)] for the reached endpoints, then
    p_k(t_f) = z_k^f - z_k(t_f).  Returns (endpoints, AdjointSolution).
    """
    if problem.lam is None:
        raise InvalidPenaltyError("approach II needs a penalty weight lam")
    n = problem.n
    c, d = kernel_matrices_II(problem.omegas, problem.t_f)
    m = np.zeros((2 * n, 2 * n))
    m[:n, :n] = (c + d).real
    m[:n, n:] = (d - c).imag
    m[n:, :n] = (c + d).imag
    m[n:, n:] = (c - d).real
    diag = 2.0 * problem.lam / problem.t_f
    m[:n, :n] += np.eye(n) * diag
    m[n:, n:] += np.eye(n) * diag
    zf = problem.targets
    rhs_c = c @ zf + d @ np.conj(zf)
    rhs = np.concatenate([rhs_c.real, rhs_c.imag])
    sol, residual, cond, near = _solve_stacked(m, rhs, "approach II")
    z_final = sol[:n] + 1j * sol[n:]
    p_final = zf - z_final
    return z_final, AdjointSolution(p_final, residual, cond, near)


def pulse_approach2(solution: AdjointSolution, problem: OctProblem) -> ExpSumPulse:
    """Optimal field u*(t) = (1/lam) sum_k Re[p_k(t_f) exp(i omega_k (t - t_f))]."""
    if problem.lam is None:
        raise InvalidPenaltyError("approach II needs a penalty weight lam")
    coeff = solution.p * np.exp(-1j * problem.omegas * problem.t_f) / problem.lam
    return ExpSumPulse(coeff, problem.omegas, problem.t_f)
