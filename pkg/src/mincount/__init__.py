"""Exact counts of k-mers per lexicographic minimizer, with bounds and a brute-force oracle."""

from .alphabet import DNA, Alphabet, Word, lex_compare, phi_gt, rank_phi, reverse_complement
from .antemer import compute_antemer_bounds, compute_antemers
from .errors import BudgetExceededError, InvalidInputError, UnsupportedOperationError
from .oracle import brute_force_antemers, brute_force_partition, brute_force_postmers, minimizer_of
from .picount import (
    PiResult,
    normalized_point,
    pi_bounds,
    pi_exact,
    pi_partition,
    regress_slope,
    relative_errors,
)
from .postmer import compute_postmer_bounds, compute_postmers
from .preprocess import beta_max, build_tables
from .scan import ScanConfig, compare, scan_sequences

__all__ = [
    "DNA", "Alphabet", "Word", "lex_compare", "phi_gt", "rank_phi", "reverse_complement",
    "compute_antemers", "compute_antemer_bounds", "compute_postmers", "compute_postmer_bounds",
    "build_tables", "beta_max",
    "PiResult", "pi_exact", "pi_bounds", "pi_partition", "normalized_point", "relative_errors",
    "regress_slope",
    "minimizer_of", "brute_force_partition", "brute_force_antemers", "brute_force_postmers",
    "ScanConfig", "scan_sequences", "compare",
    "InvalidInputError", "UnsupportedOperationError", "BudgetExceededError",
]
