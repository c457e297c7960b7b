"""The parse graph of a text: one node per position, one unit-weight edge per usable step.

A dictionary edge ``(i, j)`` exists when ``text[i:j]`` belongs to the
dictionary at time ``i``; a literal edge ``(i, i + 1)`` always exists. Any
0 -> n path is a parsing and its edge count is the parsing's cost.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .core import DictionaryConfig, ScaleLimits, Text, require_scale
from .dictionary import PropertyReport, Witness, open_dictionary


class EdgeKind(enum.Enum):
    DICTIONARY = "dictionary"
    LITERAL = "literal"


class Edge(NamedTuple):
    source: int
    target: int
    kind: EdgeKind

    @property
    def length(self) -> int:
        return self.target - self.source


@dataclass(frozen=True)
class ParseGraph:
    n: int
    # out[i] holds (target, kind) pairs sorted by target, dictionary before literal
    out: tuple[tuple[tuple[int, EdgeKind], ...], ...]

    def edges(self) -> list[Edge]:
        return [Edge(i, j, kind) for i, row in enumerate(self.out) for j, kind in row]

    def dictionary_edges(self) -> set[tuple[int, int]]:
        return {(i, j) for i, row in enumerate(self.out) for j, kind in row
                if kind is EdgeKind.DICTIONARY}

    def has(self, i: int, j: int, kind: EdgeKind = EdgeKind.DICTIONARY) -> bool:
        return 0 <= i < len(self.out) and (j, kind) in self.out[i]


def _sorted_row(row: Iterable[tuple[int, EdgeKind]]) -> tuple[tuple[int, EdgeKind], ...]:
    order = {EdgeKind.DICTIONARY: 0, EdgeKind.LITERAL: 1}
    return tuple(sorted(set(row), key=lambda e: (e[0], order[e[1]])))


def graph_from_edges(n: int, edges: Iterable[tuple[int, int, EdgeKind]]) -> ParseGraph:
    rows: list[list[tuple[int, EdgeKind]]] = [[] for _ in range(n)]
    for i, j, kind in edges:
        if not 0 <= i < j <= n:
            raise ValueError(f"edge ({i}, {j}) is not forward within 0..{n}")
        rows[i].append((j, EdgeKind(kind)))
    return ParseGraph(n, tuple(_sorted_row(r) for r in rows))


def build_graph(config: DictionaryConfig, text: Text, limits: ScaleLimits | None = None) -> ParseGraph:
    limits = limits or ScaleLimits.from_env()
    require_scale("text length for graph construction", len(text), limits.max_graph)
    d = open_dictionary(config, text)
    n = len(text)
    rows = []
    for i in range(n):
        row = [(i + length, EdgeKind.DICTIONARY) for length in d.match_lengths(i)]
        row.append((i + 1, EdgeKind.LITERAL))
        rows.append(_sorted_row(row))
    return ParseGraph(n, tuple(rows))


def shortest_path(graph: ParseGraph) -> list[Edge]:
    """Minimum-edge 0 -> n path by forward relaxation over the positions.

    Ties keep the earliest predecessor (the longest incoming edge), and a
    dictionary edge over a literal edge between the same two nodes.
    """
    n = graph.n
    dist = [0] + [n + 1] * n
    via: list[Edge | None] = [None] * (n + 1)
    for i in range(n):
        d = dist[i] + 1
        for j, kind in graph.out[i]:
            if d < dist[j]:
                dist[j] = d
                via[j] = Edge(i, j, kind)
    path = []
    j = n
    while j > 0:
        edge = via[j]
        path.append(edge)
        j = edge.source
    path.reverse()
    return path


def check_suffix_edge_closure(graph: ParseGraph) -> PropertyReport:
    """Every dictionary edge ``(i, j)`` must come with all ``(k, j)``, ``i < k < j``."""
    present = graph.dictionary_edges()
    for i, j in sorted(present):
        for k in range(i + 1, j):
            if (k, j) not in present:
                return PropertyReport.fail(Witness("missing suffix edge", time=k, edge=(k, j),
                                                   k=k - i))
    return PropertyReport.ok()


def export_dot(graph: ParseGraph, highlight: Sequence[Edge] | None = None, name: str = "parse") -> str:
    """Render as Graphviz DOT. Literal edges are dashed, dictionary edges solid,
    highlighted edges bold. Output depends only on the arguments."""
    marked = {(e.source, e.target, EdgeKind(e.kind)) for e in highlight or ()}
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  node [shape=circle];"]
    lines += [f"  {i};" for i in range(graph.n + 1)]
    for edge in graph.edges():
        style = "dashed" if edge.kind is EdgeKind.LITERAL else "solid"
        attrs = [f"style={style}"]
        if edge in marked:
            attrs = [f'style="{style},bold"', "penwidth=2.5", "color=red"]
        lines.append(f"  {edge.source} -> {edge.target} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
