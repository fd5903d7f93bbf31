"""Chirped adiabatic excitation of a spring ensemble.

Sweeping the drive frequency linearly across a band excites every spring
the sweep crosses to (almost) the same radius u0 sqrt(pi/2s), but with a
phase that is quadratic in the spring frequency.  The propagation is done
two ways: the stationary-phase prediction and the exact route through the
complex imaginary error function.

Run with --plot to draw the two curves (requires matplotlib).
"""
import sys
import warnings

import numpy as np

from springctl import (ChirpParams, chirp_final_state_exact,
                       stationary_phase_prediction)

params = ChirpParams(u0=1.0, omega_i=0.0, omega_f=2.0, t_f=400.0)
print(f"sweep rate s = {params.sweep_rate}")
print(f"predicted level u0 sqrt(pi/2s) = "
      f"{params.u0 * np.sqrt(np.pi / (2 * params.sweep_rate)):.4f}")

omegas = np.linspace(-3.0, 3.0, 241)
exact = np.array([chirp_final_state_exact(params, w) for w in omegas])
with warnings.catch_warnings():
    warnings.simplefilter("ignore")  # out-of-band points are extrapolated
    approx = np.array([stationary_phase_prediction(params, w) for w in omegas])

band = (omegas >= 0.3) & (omegas <= 1.7)
mods = np.abs(exact[band])
print(f"in-band mean radius  = {mods.mean():.4f} "
      f"(ripple {100 * mods.std() / mods.mean():.1f}% rms)")

# the quadratic phase law: fit arg z - omega t_f against omega
dense = np.linspace(0.3, 1.7, 1401)
zd = np.array([chirp_final_state_exact(params, w) for w in dense])
phase = np.unwrap(np.angle(zd * np.exp(-1j * dense * params.t_f)))
curvature = np.polyfit(dense, phase, 2)[0]
print(f"fitted phase curvature = {curvature:.2f} "
      f"(theory -1/2s = {-1 / (2 * params.sweep_rate):.2f})")

if "--plot" in sys.argv:
    import matplotlib.pyplot as plt
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7, 7))
    ax1.plot(omegas, np.abs(exact), label="exact")
    ax1.plot(omegas, np.abs(approx), label="stationary phase")
    ax1.set_xlabel("omega")
    ax1.set_ylabel("|z(t_f)|")
    ax1.legend()
    pos = omegas > 0
    ax2.plot(omegas[pos], np.angle(exact[pos]), ".", label="exact")
    ax2.plot(omegas[pos], np.angle(approx[pos]), label="stationary phase")
    ax2.set_xlabel("omega")
    ax2.set_ylabel("arg z(t_f)")
    ax2.legend()
    plt.tight_layout()
    plt.show()
