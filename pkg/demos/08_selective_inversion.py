"""Selective inversion: flip one spin, return its neighbour.

The general flat-output machinery designs a single shared field that
drives the spring at frequency 0 to (pi/2, 0) while bringing the spring at
0.5 back to the origin.  Applied twice (second pass time-reversed), it
inverts the first spin and parks the second near the pole.
"""
import sys

import numpy as np

from springctl import (SpinExperiment, experiment_trajectory,
                       pulse_max_amplitude, selective_inversion_pulse)

pulse = selective_inversion_pulse(0.0, 0.5)   # default horizon t_f = 30
print(f"field amplitude u_max = {pulse_max_amplitude(pulse):.4f} "
      f"over duration 2 x {pulse.t_f}")

experiment = SpinExperiment(pulse, mode="selective")
trajectories = {}
for omega, label in ((0.0, "inverted"), (0.5, "parked")):
    times, states = experiment_trajectory(experiment, omega,
                                          n_steps=8192, n_frames=801)
    trajectories[label] = (times, states)
    print(f"{label:9s} spin: z goes {states[0, 2]:+.3f} -> {states[-1, 2]:+.6f}")

if "--plot" in sys.argv:
    import matplotlib.pyplot as plt
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    for label, (times, states) in trajectories.items():
        ax1.plot(times, states[:, 2], label=label)
    ax1.set_ylabel("z")
    ax1.legend()
    t = np.linspace(0.0, pulse.t_f, 600)
    ax2.plot(t, pulse.value(t))
    ax2.set_xlabel("t")
    ax2.set_ylabel("u(t) (first pass)")
    plt.tight_layout()
    plt.show()
