"""Finite-group laboratory for sets of small doubling: growth constants,
ladder (order-property) detection, weak normality, Sidon sets and the
coset structure of stable sets."""
from .exceptions import BudgetExceeded, CosetLabError, GroupMismatchError, NotAbelianError
from .groups import Group, build_group, validate_cayley_table
from .growth import (
    check_14k3,
    exponent_bound_check,
    growth_stats,
    iterated_sumset,
    plunnecke_check,
    ruzsa_cover,
    symmetrize,
    triple_cube_measure,
)
from .sets import GroupSet, inverse_set, parse_set_literal, product_set, set_algebra, translate_set
from .stability import classify_dichotomy, is_sidon, ladder_search, max_ladder, weak_normality_degree
from .structure import (
    approx_stabilizer,
    largest_coset_intersection,
    refine_transversal,
    theorem_a_search,
    theorem_b_search,
    wn_representation_verify,
)
from .subgroups import enumerate_subgroups, generated_subgroup, is_subgroup
from .synthesis import BoolExpr, boolean_synthesis

__version__ = "0.1.0"
