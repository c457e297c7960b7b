"""Dictionary parsing laboratory: LZ77/LZ78/static dictionaries, greedy and
optimal parsers, closure-property checkers and an LZSS-style codec."""

from .core import (
    DictionaryConfig,
    Family,
    Literal,
    Parsing,
    ParseStats,
    Phrase,
    Pointer,
    ScaleLimits,
    expand,
    stats,
)
from .dictionary import (
    check_dynamic_suffix_closed,
    check_non_decreasing,
    contains,
    is_prefix_closed_static,
    is_suffix_closed_static,
    longest_match,
    lz78_trace,
    match_lengths,
)
from .oracle import brute_force_optimal, search_greedy_gap
from .parsegraph import build_graph, check_suffix_edge_closure, export_dot, shortest_path
from .parsers import flexible_parse, greedy_parse, optimal_parse, reverse_greedy_parse

__version__ = "0.1.0"

__all__ = [
    "DictionaryConfig", "Family", "Literal", "Parsing", "ParseStats", "Phrase", "Pointer",
    "ScaleLimits", "expand", "stats",
    "check_dynamic_suffix_closed", "check_non_decreasing", "contains", "is_prefix_closed_static",
    "is_suffix_closed_static", "longest_match", "lz78_trace", "match_lengths",
    "brute_force_optimal", "search_greedy_gap",
    "build_graph", "check_suffix_edge_closure", "export_dot", "shortest_path",
    "flexible_parse", "greedy_parse", "optimal_parse", "reverse_greedy_parse",
]
