"""springctl: control-field synthesis for ensembles of driven harmonic
oscillators, validated on ion-cyclotron-resonance excitation and two-level
quantum systems.

Three synthesis routes share one exact propagation core:

* `adiabatic`  -- chirped drives, stationary-phase predictions, and exact
  propagation through the complex imaginary error function;
* `sta`        -- shortcut protocols from flat-output polynomials, for N
  equal-target springs or any controllable linear system;
* `optimal`    -- Pontryagin linear-quadratic fields, exact-endpoint
  minimum-energy (Approach I) or endpoint-penalised (Approach II).

`spin` validates the designs on the nonlinear Bloch equations; `icr` maps
them onto planar ion dynamics in a Penning trap.
"""

from .core import (EnsembleProblem, FrequencyGrid, SpringState,
                   distance_to_target, moment_integrals,
                   polynomial_spectral_integral, propagate_exact,
                   pulse_energy, pulse_max_amplitude, sample_pulse)
from .polynomial import Polynomial
from .pulses import (ChirpPulse, ExpSumPulse, PolyDerivSumPulse, Pulse,
                     SampledPulse, ZeroPulse)
from .adiabatic import (ChirpParams, chirp_final_state_exact, chirp_pulse,
                        erfi, quadratic_phase_integral,
                        stationary_phase_prediction)
from .sta import (GeneralStaDesign, LinearSystem, StaDesign,
                  boundary_conditions_from_bk, char_poly_coeffs, general_sta,
                  g_polynomial_min, g_polynomial_zero_ends,
                  hermite_interpolate, kalman_controllability,
                  simulate_linear_system, solve_bk, spring_system,
                  sta_design, sta_distance_profile, sta_pulse)
from .optimal import (AdjointSolution, OctProblem, OctReport,
                      expsum_energy_exact, kernel_matrices_I,
                      kernel_matrices_II, pulse_approach1, pulse_approach2,
                      self_consistency_check, solve_approach1,
                      solve_approach2)
from .spin import (BlochState, FidelityProfile, SpinExperiment,
                   bloch_propagate, excitation_from_spring,
                   experiment_trajectory, fidelity, fidelity_bandwidth,
                   fidelity_sweep, inversion_sequence,
                   selective_inversion_pulse, simulate_experiment)
from .icr import (AdiabaticIcrReference, IcrConfig, IcrDesign, IcrObservables,
                  IonState, PhysicalField, RwaResult, adiabatic_icr_reference,
                  design_icr_pulse, envelope_to_physical, full_sweep,
                  icr_observables, icr_target_profile, rwa_sweep,
                  simulate_ion_full, simulate_ion_rwa, simulate_ions_full)
from . import errors

__version__ = "0.1.0"
