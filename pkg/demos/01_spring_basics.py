"""Driven-spring basics.

A spring of frequency omega driven by a shared field u(t) follows
zdot = i omega z + u with z = x + iy.  This script propagates a simple
two-tone drive across a band of frequencies and prints the endpoint map
plus the standard pulse metrics.
"""
import numpy as np

from springctl import (ExpSumPulse, propagate_exact, pulse_energy,
                       pulse_max_amplitude, distance_to_target)

# a two-tone drive on [0, 12]
pulse = ExpSumPulse([0.8 + 0.0j, 0.3 - 0.2j], [0.4, 1.1], t_f=12.0)

print(f"energy    E     = {pulse_energy(pulse):.6f}")
print(f"amplitude u_max = {pulse_max_amplitude(pulse):.6f}")
print()
print(" omega   |z(t_f)|    arg z     d to (1,0)")
for omega in np.linspace(0.0, 1.5, 7):
    z = propagate_exact(pulse, omega)
    print(f"{omega:6.2f}   {abs(z):8.4f}  {np.angle(z):+8.4f}  "
          f"{distance_to_target(z, 1.0):8.4f}")

# the response of a real drive is conjugate-symmetric in omega
z_pos = propagate_exact(pulse, 0.7)
z_neg = propagate_exact(pulse, -0.7)
print()
print(f"conjugate symmetry check: |z(-w) - conj(z(w))| = "
      f"{abs(z_neg - np.conj(z_pos)):.2e}")
