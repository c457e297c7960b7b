import pytest
from hypothesis import given, settings, strategies as st

from conftest import small_texts, windows
from lzpl.core import DictionaryConfig, ScaleExceeded, ScaleLimits
from lzpl.dictionary import open_dictionary
from lzpl.parsegraph import (
    Edge,
    EdgeKind,
    build_graph,
    check_suffix_edge_closure,
    export_dot,
    graph_from_edges,
    shortest_path,
)

D, L = EdgeKind.DICTIONARY, EdgeKind.LITERAL
LZ77 = DictionaryConfig.lz77()
ABBA_DICT = DictionaryConfig.static([b"a", b"ba", b"aba", b"bba"])


def all_path_lengths(graph):
    """Edge counts of every 0 -> n path, by plain enumeration."""
    spans = {(i, j) for i, row in enumerate(graph.out) for j, _ in row}
    out = []

    def walk(i, count):
        if i == graph.n:
            out.append(count)
            return
        for j in range(i + 1, graph.n + 1):
            if (i, j) in spans:
                walk(j, count + 1)

    walk(0, 0)
    return out


def test_build_graph_lz77():
    g = build_graph(LZ77, b"abab")
    assert g.dictionary_edges() == {(2, 3), (2, 4), (3, 4)}
    assert [(e.source, e.target) for e in g.edges() if e.kind is L] == [(0, 1), (1, 2), (2, 3), (3, 4)]


def test_build_graph_empty():
    g = build_graph(LZ77, b"")
    assert g.n == 0 and g.edges() == []


def test_build_graph_static():
    # "ba" = abba[2:4] is in the dictionary too
    assert build_graph(ABBA_DICT, b"abba").dictionary_edges() == {(0, 1), (1, 4), (2, 4), (3, 4)}


def test_build_graph_scale():
    with pytest.raises(ScaleExceeded):
        build_graph(LZ77, b"a" * 20, ScaleLimits(max_graph=10))


def test_shortest_path_examples():
    assert shortest_path(build_graph(LZ77, b"abab")) == [Edge(0, 1, L), Edge(1, 2, L), Edge(2, 4, D)]
    assert shortest_path(build_graph(LZ77, b"")) == []
    assert shortest_path(build_graph(ABBA_DICT, b"abba")) == [Edge(0, 1, D), Edge(1, 4, D)]


def test_shortest_path_tie_breaks():
    # two 2-edge paths: via node 1 or via node 2; the one arriving from the earlier node wins
    g = graph_from_edges(3, [(0, 1, L), (1, 2, L), (2, 3, L), (0, 2, D), (1, 3, D)])
    assert shortest_path(g) == [Edge(0, 1, L), Edge(1, 3, D)]
    g = graph_from_edges(1, [(0, 1, L), (0, 1, D)])
    assert shortest_path(g) == [Edge(0, 1, D)]


def test_edge_closure_examples():
    assert check_suffix_edge_closure(build_graph(LZ77, b"abcabcabca"))
    report = check_suffix_edge_closure(build_graph(DictionaryConfig.static([b"ab"]), b"ab"))
    assert not report and report.witness.edge == (1, 2)
    assert check_suffix_edge_closure(build_graph(DictionaryConfig.static([]), b"abc"))


def test_export_dot():
    empty = export_dot(build_graph(LZ77, b""))
    assert "  0;" in empty and "->" not in empty
    g = build_graph(LZ77, b"abab")
    dot = export_dot(g)
    assert "  2 -> 4 [style=solid];" in dot
    assert "  0 -> 1 [style=dashed];" in dot
    assert dot == export_dot(build_graph(LZ77, b"abab"))
    bold = export_dot(g, shortest_path(g))
    assert '2 -> 4 [style="solid,bold"' in bold and '0 -> 1 [style="dashed,bold"' in bold


@settings(max_examples=60)
@given(text=small_texts(14, alphabet=2), h=windows,
       family=st.sampled_from(["lz77", "lz78", "static"]),
       phrases=st.sets(small_texts(4, alphabet=2).filter(bool), max_size=6))
def test_shortest_path_is_minimal(text, h, family, phrases):
    config = {"lz77": DictionaryConfig.lz77(h), "lz78": DictionaryConfig.lz78(),
              "static": DictionaryConfig.static(phrases)}[family]
    g = build_graph(config, text)
    path = shortest_path(g)
    assert len(path) == min(all_path_lengths(g))
    assert [e.source for e in path] == sorted(e.source for e in path)
    assert all(g.has(e.source, e.target, e.kind) for e in path)


@given(text=small_texts(24), h=windows)
def test_lz77_graphs_are_edge_closed(text, h):
    assert check_suffix_edge_closure(build_graph(DictionaryConfig.lz77(h), text))


@given(text=small_texts(20), h=windows, family=st.sampled_from(["lz77", "lz78"]))
def test_graph_edges_match_dictionary(text, h, family):
    config = DictionaryConfig.lz77(h) if family == "lz77" else DictionaryConfig.lz78()
    g = build_graph(config, text)
    d = open_dictionary(config, text)
    expected = {(i, i + n) for i in range(len(text)) for n in d.match_lengths(i)}
    assert g.dictionary_edges() == expected
    assert all(g.has(i, i + 1, L) for i in range(len(text)))
    assert all(i < j <= len(text) for i, j, _ in g.edges())
