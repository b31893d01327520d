"""Co-linear chaining of exact matches between sequences and labeled DAGs."""

from .chaining import (
    ASYMMETRIC,
    GRAPH_SYMMETRIC,
    STRING_SYMMETRIC,
    ChainResult,
    chain_dag_asymmetric,
    chain_dag_symmetric,
    chain_is_valid,
    chain_string_symmetric,
    coverage,
    lcs_graph,
)
from .cover import PathCoverIndex, build_cover, forward_links, make_cover, min_path_cover
from .graph import (
    GraphError,
    GraphSubstring,
    LabeledDag,
    Query,
    extensions,
    parse_fasta,
    parse_graph,
    reachability,
    topological_order,
)
from .mems import NodeMem, StringMem, filter_min_length, find_node_mems, find_string_mems
from .score_index import NEG_INF, ScoreIndex

__version__ = "0.1.0"

__all__ = [
    "ASYMMETRIC",
    "GRAPH_SYMMETRIC",
    "NEG_INF",
    "STRING_SYMMETRIC",
    "ChainResult",
    "GraphError",
    "GraphSubstring",
    "LabeledDag",
    "NodeMem",
    "PathCoverIndex",
    "Query",
    "ScoreIndex",
    "StringMem",
    "build_cover",
    "chain_dag_asymmetric",
    "chain_dag_symmetric",
    "chain_is_valid",
    "chain_string_symmetric",
    "coverage",
    "extensions",
    "filter_min_length",
    "find_node_mems",
    "find_string_mems",
    "forward_links",
    "lcs_graph",
    "make_cover",
    "min_path_cover",
    "parse_fasta",
    "parse_graph",
    "reachability",
    "topological_order",
]
