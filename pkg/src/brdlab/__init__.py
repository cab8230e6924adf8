"""Approximate better-response dynamics for smoothed congestion games."""
from .costs import CostSharingCosts, PolynomialCosts, StepFunctionCosts, TabularCosts, harmonic
from .dynamics import (BrdConfig, Move, PivotRule, RunTrace, Status, best_response, find_improving_move,
                       is_alpha_improving, is_alpha_pne, run_brd)
from .game import (Game, GameValidationError, compute_loads, min_cost_lower_bound, player_cost, potential,
                   potential_difference_check, potential_upper_bound, validate_game)
from .lemma import BoundQuery, LemmaParams, iteration_bound, lemma_bound_rhs, lemma_mc_estimate, per_run_cap
from .network import NetworkSpec, enumerate_simple_paths, network_best_response
from .oracle import (EnumerationBudget, brute_force_is_alpha_pne, brute_force_min_potential,
                     enumerate_profiles)
from .smoothing import PerturbationSpec, UniformLow, UniformWindow, perturb, sample_phi_smooth

__version__ = "0.1.0"
