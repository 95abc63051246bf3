"""Symbolic dynamics of the planar two-fixed-center problem.

Classification of regular tori in the integral-map plane, closed-form
periods and rotation numbers, Sturmian word prediction, regularized orbit
integration, and verification that integrated syzygy sequences match the
predicted words.
"""

from .elliptic import complete_k
from .emmap import (CriticalData, Region, classify, critical_data,
                    region_boundaries, region_interval, region_menu)
from .model import (CartesianState, Params, PhaseState, deck_transform,
                    from_regularized, hamiltonian, second_integral,
                    separated_hamiltonians, time_factor, to_regularized)
from .orbits import (OrbitSpec, Trajectory, collision_orbits, integrate,
                     periodic_orbit, predicted_word, syzygy_word,
                     verify_theorems)
from .periods import (ModulusData, TorusData, modulus_data, period_lambda,
                      period_nu, rotation_number, rotation_number_on_branch,
                      solve_g, w_range, window_phases)
from .sturmian import (ExponentSequence, SlopeIntercept, SymbolWord,
                       WindowPhases, canonical_rational_word,
                       cutting_sequence, enumerate_syzygy_words, is_balanced,
                       sturmian_exponents, word_from_exponents)

__version__ = "0.1.0"

__all__ = [
    "CartesianState", "CriticalData", "ExponentSequence", "ModulusData",
    "OrbitSpec", "Params", "PhaseState", "Region", "SlopeIntercept",
    "SymbolWord", "TorusData", "Trajectory", "WindowPhases",
    "canonical_rational_word", "classify", "collision_orbits", "complete_k",
    "critical_data", "cutting_sequence", "deck_transform",
    "enumerate_syzygy_words", "from_regularized", "hamiltonian", "integrate",
    "is_balanced", "modulus_data", "period_lambda", "period_nu",
    "periodic_orbit", "predicted_word", "region_boundaries",
    "region_interval", "region_menu", "rotation_number",
    "rotation_number_on_branch", "second_integral", "separated_hamiltonians",
    "solve_g", "sturmian_exponents", "syzygy_word", "time_factor",
    "to_regularized", "verify_theorems", "w_range", "window_phases",
    "word_from_exponents",
]
