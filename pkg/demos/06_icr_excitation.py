"""Optimal ion-cyclotron excitation vs the standard chirp.

The excitation envelope is designed on dimensionless springs whose
frequency plays the role of the detuning from the carrier: a tanh radius
target with a linear phase ramp.  Physically the drive is that envelope on
a cos(omega_0 t) carrier.  This script designs the pulse, compares the
rotating-wave prediction against the full Lorentz-force dynamics for a few
ions, and contrasts the phase law with a chirped reference.
"""
import numpy as np

from springctl import (IcrConfig, adiabatic_icr_reference, design_icr_pulse,
                       envelope_to_physical, icr_observables, rwa_sweep,
                       simulate_ion_rwa, simulate_ions_full)
from springctl.icr import MS

cfg = IcrConfig()  # 100 V/m, 10 T, 500 kHz carrier, 1 ms drive
design = design_icr_pulse(cfg)
print(f"envelope u_max = {design.report.max_amplitude:.2f}, "
      f"energy = {design.report.energy:.2f}, "
      f"worst endpoint error = {design.report.endpoint_errors.max():.2e}")

# a few ions across the excited band: full dynamics vs rotating frame
detunings = np.array([-80.0, -40.0, 0.0, 40.0, 80.0])     # rad/ms
field = envelope_to_physical(design.pulse, cfg)
states = simulate_ions_full(field, cfg.omega0 + detunings / MS, cfg.tf_s,
                            1.0 / (cfg.steps_per_period * cfg.f0_hz),
                            cfg.f0_hz)
print("\n detuning   r_full (mm)   r_rwa (mm)")
for dw, state in zip(detunings, states):
    r_full = icr_observables(state, cfg).r_mm
    r_rwa = icr_observables(simulate_ion_rwa(design.pulse, dw, cfg), cfg).r_mm
    print(f"  {dw:+6.0f}    {r_full:9.3f}    {r_rwa:9.3f}")

# phase laws across the band
f_grid = cfg.f0_hz + np.linspace(-12e3, 12e3, 121)
_, phi_opt = rwa_sweep(design.pulse, cfg, f_grid)
slope = np.polyfit((2 * np.pi * f_grid - cfg.omega0) * MS, phi_opt, 1)[0]
print(f"\noptimal phase slope |d phi / d omega| = {abs(slope):.4f} "
      f"(design eta * t_f = {cfg.eta * cfg.tf_ms})")

ref = adiabatic_icr_reference(cfg)
band = np.abs(ref.f_hz - cfg.f0_hz) <= 15e3
phi = ref.phi_rad[band]
f = ref.f_hz[band]
lin = phi - np.polyval(np.polyfit(f, phi, 1), f)
quad = phi - np.polyval(np.polyfit(f, phi, 2), f)
print(f"chirp reference: linear-fit residual {np.sqrt(np.mean(lin**2)):.2f} rad"
      f" vs quadratic-fit residual {np.sqrt(np.mean(quad**2)):.4f} rad")
print("the optimal pulse owns a linear phase; the chirp cannot")
