"""Quad counting, formulas, and exhaustive search over XOR-quadruple decks.

A deck of dimension n is the set of cards 0..2^n-1; four distinct cards form
a quad when their bitwise XOR is zero. The package counts quads exactly,
evaluates the recursive maximum-quad formula and its sequence identities,
applies the GF(2) affine symmetries, and certifies results at desk scale
with exhaustive, isomorph-reduced search.
"""

__version__ = "0.1.0"

from ._backend import BACKEND, backend_name
from .core import (
    CardSet,
    CrossTally,
    DeckDim,
    complete_quad,
    count_quads,
    count_quads_incremental,
    count_quads_oracle,
    cross_tally,
    deck_quad_total,
    is_complete,
    is_quad,
    prefix_set,
    random_subset,
    random_subset_of_size,
)
from .errors import CapacityError, InternalFaultError, QuadsError, SearchBudgetError
from .formulas import (
    a213673,
    complementary_difference,
    hyperplane_minus_point,
    moser_de_bruijn,
    packed_quad_count,
    packed_quad_table,
    partial_difference,
    quad_count_bound,
    sequence_terms,
)
from .gf2 import (
    AffineMap,
    BitMatrix,
    affine_apply,
    affine_compose,
    affine_invert,
    identity_matrix,
    is_invertible,
    mat_apply,
    random_affine,
    rank_and_basis,
)
from .search import (
    CanonicalPrefix,
    ConjectureCheck,
    EnumerationStats,
    PrefixPackedCheck,
    SearchResult,
    SmallestDeckEntry,
    check_conjecture,
    enumerate_canonical,
    iter_canonical,
    max_quads_exhaustive,
    smallest_deck_table,
    verify_prefix_packed,
)
