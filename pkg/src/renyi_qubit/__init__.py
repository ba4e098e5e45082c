"""Tight lower bounds on sums of Renyi entropies of two qubit observables."""

from .bound_engine import (
    BoundResult,
    Overlap,
    ReferenceBound,
    Regime,
    SweepRow,
    SweepSpec,
    alpha_dagger,
    alpha_star,
    bound_sweep,
    closed_form_square,
    diagonal_bound,
    diagonal_branches,
    reference_bounds,
    suboptimal_bound,
    tight_bound,
)
from .entropy_core import (
    big_d,
    big_d_prime,
    curvature_k,
    delta_gap,
    min_entropy,
    objective,
    renyi_entropy,
)
from .oracle import OracleConfig, OracleResult, brute_force_min, verify_phase_optimality
from .qubit_algebra import (
    MinimizerFamily,
    UnitaryFactorization,
    entropy_sum_of_state,
    factorize,
    landau_pollak_residual,
    minimizer_states,
    overlap_of,
)
from .verification import run_verification

__version__ = "0.1.0"

__all__ = [
    "BoundResult", "Overlap", "ReferenceBound", "Regime", "SweepRow", "SweepSpec",
    "alpha_dagger", "alpha_star", "bound_sweep", "closed_form_square", "diagonal_bound",
    "diagonal_branches", "reference_bounds", "suboptimal_bound", "tight_bound",
    "big_d", "big_d_prime", "curvature_k", "delta_gap", "min_entropy", "objective",
    "renyi_entropy", "OracleConfig", "OracleResult", "brute_force_min",
    "verify_phase_optimality", "MinimizerFamily", "UnitaryFactorization",
    "entropy_sum_of_state", "factorize", "landau_pollak_residual", "minimizer_states",
    "overlap_of", "run_verification",
]
