"""Q3-free and C4-free subgraphs of the hypercube: constructions,
verification, recurrence bound tables, and search."""

from .coloring import AeoColoring, builtin, split_nonedges_to_eo, validate
from .core import EdgeRef, Subcube, Vertex, edge_index, edge_p_value, format_edge, parse_edge
from .general import covering_check, general_construction, residue_class
from .product import ProductSpec, build_product, predicted_edge_count
from .recurrence import bound_table, pigeonhole_q, step_edges, step_omitted
from .search import SearchConfig, exact_min_hitting, perturb
from .subgraph import CubeSubgraph, from_edge_list, greedy_complete, is_free, is_maximal

__all__ = [
    "AeoColoring", "CubeSubgraph", "EdgeRef", "ProductSpec", "SearchConfig",
    "Subcube", "Vertex", "bound_table", "build_product", "builtin",
    "covering_check", "edge_index", "edge_p_value", "exact_min_hitting",
    "format_edge", "from_edge_list", "general_construction", "greedy_complete",
    "is_free", "is_maximal", "parse_edge", "perturb", "pigeonhole_q",
    "predicted_edge_count", "residue_class", "split_nonedges_to_eo",
    "step_edges", "step_omitted", "validate",
]

__version__ = "0.1.0"
