"""Johnson-type signed graphs J±(n,k,t): constructions, exact solvers, bounds and audits."""
from .constructions import (
    Coloring,
    SubsetAssignment,
    altsign_coloring_k3,
    contest_triple_coloring,
    default_subset_assignment,
    min_m_for,
    msb_diff,
    subset_coloring_k2,
    warmup_coloring_k2,
)
from .errors import (
    BudgetExceededError,
    EnumerationError,
    InvalidInputError,
    InvalidSpecError,
    JChromaError,
    MissingVertexError,
    UnsupportedFamilyError,
)
from .graph_core import (
    Edge,
    GraphSpec,
    SignedVertex,
    adjacent,
    apply_signed_permutation,
    enumerate_edges,
    enumerate_vertices,
    scalar_product,
)
from .solvers import (
    SolveBudget,
    exact_chromatic,
    greedy_transitive_cover,
    max_independent_set,
)
from .bounds import bound_report, lovasz_bound, ratio_bound, theorem_formulas
from .verify import check_contest_coloring, check_independent, check_proper

__version__ = "0.1.0"
