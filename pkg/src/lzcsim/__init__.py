"""Multichannel Landau-Zener-Coulomb model: closed-form transition
probabilities, a norm-preserving Cayley propagator, and a scenario
harness comparing the two."""

from .models import (Coulomb, DiabaticModel, LevelSpec, Linear, LzcModel,
                     PowerLaw, PropagationConfig, Quadratic, QuadraticSkew,
                     StateVector, TransitionDistribution, load_model,
                     save_model, validate)
from .analytic import (AsymptoticAmplitude, asymptotic_amplitudes,
                       avoided_crossing_inverse, avoided_crossing_params,
                       demkov_osherov_survival, distribution, ica_survival,
                       lz_factor, saturation_bound, survival_probability,
                       transition_probability, two_state_survival)
from .hamiltonian import (adiabatic_energies, generic_hamiltonian,
                          lzc_hamiltonian, reduce_qubit_basis,
                          two_qubit_hamiltonian)
from .loggamma import log_gamma, log_gamma_abs, log_gamma_arg
from .propagator import (PropagationResult, cayley_step, convergence_report,
                         initial_state, propagate)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
