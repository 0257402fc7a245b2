"""Balanced rainbow-free colorings of cubes C_t^n.

Library for enumerating geometric and combinatorial lines, constructing
the balanced rainbow-free colorings (halving, prefix lift, anti-Latin
squares, the explicit C_3^3 coloring), verifying colorings, exhaustively
searching small hypergraphs, and exporting the decision problem as CNF.
"""

from .cube import (
    BACKWARD,
    FORWARD,
    CubeShape,
    LinePattern,
    ap_embed,
    ap_hypergraph,
    canonical_roles,
    combinatorial_line_count,
    enumerate_combinatorial_lines,
    enumerate_geometric_lines,
    geometric_line_count,
    iter_lines,
    line_count,
    line_hypergraph,
    line_points,
    line_ranks,
    rank,
    unrank,
)
from .hypergraph import Hypergraph, read_hypergraph, write_hypergraph
from .colorings import (
    Coloring,
    anti_latin_grid,
    anti_latin_square,
    c33_base,
    halving_coloring,
    lift_coloring,
    read_coloring,
    write_coloring,
)
from .verify import (
    VerifyReport,
    class_sizes,
    count_rainbow_edges,
    count_rainbow_lines,
    edge_is_rainbow,
    find_monochromatic_line,
    find_rainbow_edge,
    find_rainbow_line,
    is_anti_latin,
    is_balanced,
    is_rainbow_free,
    verify_report,
)
from .search import (
    SearchOptions,
    SearchOutcome,
    SearchStatus,
    balanced_upper_chromatic,
    chi_b_lower_bound_check,
    chi_b_search,
    count_balanced_colorings,
    divisors_descending,
    exists_balanced_rainbow_free,
)
from .cnf import (
    Cnf,
    CnfEncoding,
    check_model,
    encode_balanced_rainbow_free,
    export_cnf,
    model_from_coloring,
    parse_dimacs,
    solve,
)

__version__ = "0.1.0"
