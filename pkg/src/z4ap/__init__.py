"""Progression-free subsets of Z_4^n: exact arithmetic, the polynomial-method
certificates behind the 4^(gamma n) bound, and brute-force oracles."""

from .bounds import (
    binom_sum,
    check_entropy_bound,
    compute_gamma,
    corollary_bound,
    entropy,
    finite_bound,
    integral_decomposition_check,
    theorem_bound,
)
from .cosets import build_B_and_C, coset_profile, replay_proposition, rich_coset_report
from .group import (
    GroupVector,
    PointSet,
    add,
    coset_decompose,
    double,
    find_progression,
    is_progression_free,
    tensor_power,
    two_dot,
    two_star,
)
from .lemma import build_certificate, check_lemma, difference_expansion, independence_witness
from .poly import (
    MultilinearPoly,
    evaluate,
    evaluation_matrix,
    kernel_basis,
    monomial_count_fdelta,
    rank,
    shift,
    vanishing_poly,
)
from .search import exact_r3, heuristic_r3, verify_file

__version__ = "0.1.0"
