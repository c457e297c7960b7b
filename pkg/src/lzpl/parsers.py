"""Parsing strategies under the uniform cost model (every token costs 1).

Every parser falls back to a literal when no dictionary phrase fits, so any
text is parsable under any dictionary. Adding the single symbols to a
suffix-closed dynamic dictionary keeps it suffix-closed (a one-symbol phrase
has no proper suffix), so the greedy optimality result carries over to the
literal-augmented model; the oracle test-suite checks this rather than
trusting it.
"""

from __future__ import annotations

from .core import (
    DictionaryConfig,
    Family,
    FamilyMismatch,
    Literal,
    Parsing,
    Phrase,
    ScaleLimits,
    Text,
    Token,
    expand,
)
from .dictionary import StaticDictionary, open_dictionary
from .parsegraph import EdgeKind, build_graph, shortest_path


def greedy_parse(config: DictionaryConfig, text: Text) -> Parsing:
    d = open_dictionary(config, text)
    tokens: list[Token] = []
    i = 0
    while i < len(text):
        length, _ = d.longest_match(i)
        if length >= 1:
            tokens.append(d.token(i, length))
            i += length
        else:
            tokens.append(Literal(text[i]))
            i += 1
    return Parsing.from_tokens(tokens)


def optimal_parse(config: DictionaryConfig, text: Text, limits: ScaleLimits | None = None) -> Parsing:
    """Minimum token count, via shortest path on the parse graph."""
    graph = build_graph(config, text, limits)
    d = open_dictionary(config, text)
    tokens: list[Token] = []
    for edge in shortest_path(graph):
        if edge.kind is EdgeKind.DICTIONARY:
            tokens.append(d.token(edge.source, edge.length))
        else:
            tokens.append(Literal(text[edge.source]))
    return Parsing.from_tokens(tokens)


def flexible_parse(config: DictionaryConfig, text: Text) -> Parsing:
    """One-step lookahead: pick the first step whose follow-up step reaches furthest.

    Candidates are every matching phrase length plus the literal step. Ties go
    to the longer first step, then to a phrase over a literal.
    """
    d = open_dictionary(config, text)
    n = len(text)

    def reach(j: int) -> int:
        if j >= n:
            return n
        return j + max(d.longest_match(j)[0], 1)

    tokens: list[Token] = []
    i = 0
    while i < n:
        # (reach, first step, is_phrase)
        best = (reach(i + 1), 1, False)
        for length in d.match_lengths(i):
            cand = (reach(i + length), length, True)
            if cand > best:
                best = cand
        _, length, is_phrase = best
        tokens.append(d.token(i, length) if is_phrase else Literal(text[i]))
        i += length
    return Parsing.from_tokens(tokens)


def reverse_greedy_parse(dictionary: DictionaryConfig | StaticDictionary, text: Text) -> Parsing:
    """Greedy from the right end: peel off the longest phrase that ends the unparsed text."""
    if isinstance(dictionary, DictionaryConfig):
        if dictionary.family is not Family.STATIC:
            raise FamilyMismatch(f"reverse greedy needs a static dictionary, got {dictionary.describe()}")
        phrases, cap = dictionary.phrases, dictionary.max_length
    elif isinstance(dictionary, StaticDictionary):
        phrases, cap = dictionary.phrases, dictionary.max_length
    else:
        raise FamilyMismatch(f"reverse greedy needs a static dictionary, got {type(dictionary).__name__}")
    lengths = sorted({len(p) for p in phrases if cap is None or len(p) <= cap}, reverse=True)
    backwards: list[Token] = []
    end = len(text)
    while end > 0:
        for length in lengths:
            if length <= end and text[end - length:end] in phrases:
                backwards.append(Phrase(text[end - length:end]))
                end -= length
                break
        else:
            backwards.append(Literal(text[end - 1]))
            end -= 1
    return Parsing.from_tokens(reversed(backwards))


def validate_parsing(parsing: Parsing, config: DictionaryConfig, text: Text) -> None:
    """Raise ``ValueError`` unless ``parsing`` covers ``text`` exactly with
    tokens drawn from the dictionary in force at each token's start."""
    if parsing.covered != len(text):
        raise ValueError(f"parsing covers {parsing.covered} symbols, text has {len(text)}")
    if any(b <= a for a, b in zip(parsing.starts, parsing.starts[1:])):
        raise ValueError("token starts are not strictly increasing")
    if expand(parsing, config) != bytes(text):
        raise ValueError("parsing does not expand to the text")
    d = open_dictionary(config, text)
    for start, token in zip(parsing.starts, parsing.tokens):
        if isinstance(token, Literal):
            continue
        w = text[start:start + token.length]
        if not d.contains(start, w):
            raise ValueError(f"{token} at {start} is not a phrase of the dictionary at that time")


PARSERS = {
    "greedy": greedy_parse,
    "optimal": optimal_parse,
    "flexible": flexible_parse,
    "reverse": reverse_greedy_parse,
}
