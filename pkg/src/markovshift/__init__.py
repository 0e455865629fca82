"""Invariants and equivalence decisions for one-sided topological Markov shifts.

The package computes the complete invariant (Bowen-Franks group with its
distinguished all-ones class and the sign of det(id - A)) of irreducible
shifts of finite type, decides continuous orbit equivalence and flow
equivalence, realizes any admissible invariant triple as an explicit 0/1
matrix, and decides positivity of ordered-cohomology classes through
periodic orbits.
"""

from .cohomology import (
    LocallyConstantFn,
    PositivityResult,
    attracting_weight,
    coboundary,
    is_positive_class,
    orbit_sum,
)
from .errors import (
    DomainError,
    InadmissibleWordError,
    MarkovShiftError,
    ParseError,
    PreconditionError,
    ShapeError,
    UndecidedError,
    UnsupportedError,
    VerificationError,
)
from .groups import (
    FgAbelianGroup,
    GroupElement,
    PointedGroup,
    Presentation,
    canonical_group,
    element_from_vector,
    from_presentation,
    height_sequence,
    is_isomorphic,
    orbit_brute_force,
    pointed_is_isomorphic,
    tensor_z2,
)
from .intmat import IntMatrix, SnfResult, determinant, kernel_basis, smith_normal_form, solve_linear
from .invariants import (
    EquivalenceDecision,
    MarkovInvariant,
    bowen_franks,
    decide_coe,
    decide_flow,
    full_group_abelianization,
    invariant_triple,
    k_groups,
)
from .realization import RealizationPlan, base_matrix, choose_shape, point_vector, realize, tail_extension
from .shifts import (
    Diagnostics,
    EventuallyPeriodicPoint,
    NonNegMatrix,
    Word,
    ZeroOneMatrix,
    admissible_words,
    count_period_points,
    edge_shift,
    eventually_periodic_point,
    higher_block,
    identity_minus,
    is_admissible,
    is_cyclically_admissible,
    is_irreducible,
    least_rotation_period,
    lex_min_rotation,
    period_of,
    periodic_orbit_words,
    satisfies_condition_I,
    validate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
