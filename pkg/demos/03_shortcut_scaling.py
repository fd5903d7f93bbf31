"""Ultra-high-efficiency shortcut designs around a single frequency.

Placing all N design frequencies at omega = 0 makes the endpoint error
scale as omega^(2N): each extra pair of conditions buys two more orders of
flatness at the working point, paid for with a stronger field.
"""
import sys

import numpy as np

from springctl import pulse_max_amplitude, sta_design, sta_distance_profile

t_f = 24.0
omegas = np.logspace(-2, 0, 41)

profiles = {}
print(" N   fitted slope   d(0.05)      u_max")
for n in (2, 4, 6, 8):
    design = sta_design(np.zeros(n), t_f)          # zero-ends family
    d = sta_distance_profile(design, omegas)
    profiles[n] = d
    small = omegas <= 0.1
    slope = np.polyfit(np.log(omegas[small]), np.log(d[small]), 1)[0]
    print(f"{n:2d}   {slope:10.3f}   {sta_distance_profile(design, 0.05):.3e}"
          f"   {pulse_max_amplitude(design.pulse):8.3f}")

print()
print("slope ~ 2N: the distance drops as omega^(2N) near the design point")

if "--plot" in sys.argv:
    import matplotlib.pyplot as plt
    for n, d in profiles.items():
        plt.loglog(omegas, d, label=f"N={n}")
    plt.xlabel("omega")
    plt.ylabel("distance to target")
    plt.legend()
    plt.show()
