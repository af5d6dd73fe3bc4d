"""Families of pairwise graph-different permutations: constructions with
proven size guarantees, pairwise verification, and exact maximum-family
search on small instances.
"""

from .constructions import (
    GadgetTriple,
    alternating_family,
    block_embedding_family,
    block_gadgets,
    five_permutation_gadget,
    gadget_power_clique,
    has_spanning_transitive_order,
    robust_family,
    ternary_witness,
    thrupath_family,
    verify_ternary_clique,
)
from .difference import (
    DiffMode,
    LabeledDigraph,
    VerificationReport,
    are_different,
    difference_digraph,
    directed_witness,
    robust_witness,
    verify_family,
)
from .digraphs import (
    AlternatingPath,
    DigraphSpec,
    Explicit,
    FiniteDigraph,
    OrientedPath,
    SymmetricComplete,
    SymmetricPath,
    Thrupath,
    block_gadget_digraph,
    chromatic_number_underlying,
    cyclic_triangle,
    cyclic_triangle_count,
    enumerate_regular_tournaments,
    has_edge,
    is_regular_tournament,
    lex_power,
    regular_cyclic_triangle_reference,
    restrict,
    transitive_triangle,
)
from .errors import BudgetError, GraphSpecParseError
from .permutations import (
    PermutationFamily,
    fibonacci,
    identity,
    is_loose,
    lambda_mu,
    loose_subsets,
    parse_family,
    read_family,
    sigma_from_loose,
    write_family,
)
from .search import (
    SearchBudget,
    SearchResult,
    check_supermultiplicative,
    chromatic_bound_check,
    max_family_exact,
    middle_binomial,
    rate,
)

__version__ = "0.1.0"
