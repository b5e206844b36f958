"""Rainbow matchings in edge-coloured bipartite multigraphs.

Solvers (greedy, switching engine, golden-ratio recursion, exact oracle),
Latin square transversals, the rainbow connectivity toolbox, the Menger
counterexample lab, and the threshold formula table.
"""

from .budget import SearchBudget
from .core import (
    ColouredBipartiteMultigraph,
    Edge,
    MatchingContext,
    RainbowMatching,
    build_graph,
    greedy_rainbow_matching,
    make_context,
    read_edge_list,
    verify_rainbow_matching,
    write_edge_list,
)
from .latin import (
    LatinRectangle,
    extract_transversal,
    parse_latin,
    rectangle_to_graph,
    square_to_graph,
    write_latin,
)
from .oracle import OracleResult, exact_max_rainbow_matching
from .switching import (
    Switching,
    apply_switching,
    augment,
    build_switch_digraph,
    path_to_switching,
    solve_switching_engine,
    validate_switching,
    woolbright_floor,
)
from .golden import golden_solve
from .menger import build_counterexample, fractional_menger

__version__ = "0.1.0"

__all__ = [
    "SearchBudget",
    "ColouredBipartiteMultigraph",
    "Edge",
    "MatchingContext",
    "RainbowMatching",
    "build_graph",
    "greedy_rainbow_matching",
    "make_context",
    "read_edge_list",
    "verify_rainbow_matching",
    "write_edge_list",
    "LatinRectangle",
    "extract_transversal",
    "parse_latin",
    "rectangle_to_graph",
    "square_to_graph",
    "write_latin",
    "OracleResult",
    "exact_max_rainbow_matching",
    "Switching",
    "apply_switching",
    "augment",
    "build_switch_digraph",
    "path_to_switching",
    "solve_switching_engine",
    "validate_switching",
    "woolbright_floor",
    "golden_solve",
    "build_counterexample",
    "fractional_menger",
    "__version__",
]
