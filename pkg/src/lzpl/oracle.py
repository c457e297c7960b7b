"""Exhaustive minimum-token oracle and the greedy-gap search built on it.

The oracle deliberately shares no matching or shortest-path code with the rest
of the package: dictionary membership is decided by plain substring tests on
the window, and the LZ78 phrase table is rebuilt from the text consumed along
each explored branch.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from .core import (
    DictionaryConfig,
    Family,
    Literal,
    Parsing,
    Phrase,
    Pointer,
    ScaleLimits,
    Text,
    Token,
    require_scale,
)
from .corpus import GENERATORS, all_texts, random_phrases, random_text


def _lz78_phrases(prefix: bytes) -> frozenset[bytes]:
    """Replay LZ78 over ``prefix`` and return every phrase it completes."""
    phrases: set[bytes] = set()
    start = 0
    while start < len(prefix):
        end = start + 1
        while end <= len(prefix) and prefix[start:end] in phrases:
            end += 1
        if end > len(prefix):
            break
        phrases.add(prefix[start:end])
        start = end
    return frozenset(phrases)


def _membership(config: DictionaryConfig, text: bytes):
    cap = config.max_length

    if config.family is Family.LZ77:
        h = config.window

        def member(i: int, w: bytes) -> bool:
            lo = 0 if h is None else max(0, i - h)
            if config.allow_overlap:
                return any(text[s:s + len(w)] == w for s in range(lo, i))
            return w in text[lo:i]

    elif config.family is Family.LZ78:
        table = lru_cache(maxsize=None)(lambda i: _lz78_phrases(text[:i]))

        def member(i: int, w: bytes) -> bool:
            return w in table(i)

    else:
        phrases = config.phrases

        def member(i: int, w: bytes) -> bool:
            return w in phrases

    def ok(i: int, w: bytes) -> bool:
        return (cap is None or len(w) <= cap) and member(i, w)

    return ok


def _token(config: DictionaryConfig, text: bytes, i: int, length: int, is_phrase: bool) -> Token:
    if not is_phrase:
        return Literal(text[i])
    w = text[i:i + length]
    if config.family is Family.STATIC:
        return Phrase(w)
    if config.family is Family.LZ77:
        lo = 0 if config.window is None else max(0, i - config.window)
        end = i - 1 + length if config.allow_overlap else i
        return Pointer(i - text.rfind(w, lo, end), length)
    return Pointer(i - text.rfind(w, 0, i), length)


def brute_force_optimal(config: DictionaryConfig, text: Text,
                        limits: ScaleLimits | None = None) -> tuple[int, Parsing]:
    """Smallest token count over every way of cutting ``text`` into valid tokens.

    A cut of length 1 is always valid (as a literal); whether it is written as
    a literal or a one-symbol phrase changes neither its cost nor any later
    dictionary, so the two spellings are explored as one branch. Branches that
    cannot beat the best count found so far are abandoned.
    """
    limits = limits or ScaleLimits.from_env()
    text = bytes(text)
    n = len(text)
    require_scale("text length for brute force", n, limits.max_brute)
    member = _membership(config, text)

    best_count = n
    best_cuts: list[tuple[int, int, bool]] = [(i, 1, member(i, text[i:i + 1])) for i in range(n)]
    cuts: list[tuple[int, int, bool]] = []

    def explore(i: int) -> None:
        nonlocal best_count, best_cuts
        if i == n:
            if len(cuts) < best_count:
                best_count, best_cuts = len(cuts), list(cuts)
            return
        if len(cuts) + 1 >= best_count:
            return
        for length in range(n - i, 0, -1):
            is_phrase = member(i, text[i:i + length])
            if length > 1 and not is_phrase:
                continue
            cuts.append((i, length, is_phrase))
            explore(i + length)
            cuts.pop()

    explore(0)
    tokens = [_token(config, text, i, length, p) for i, length, p in best_cuts]
    return best_count, Parsing.from_tokens(tokens)


# ---------------------------------------------------------------------------
# greedy gap search


@dataclass
class GapInstance:
    text: bytes
    config: DictionaryConfig
    greedy: Parsing
    optimal: Parsing
    optimal_count: int


@dataclass
class GapSearch:
    family: Family
    explored: int = 0
    found: GapInstance | None = None
    windows: tuple = ()
    notes: list[str] = field(default_factory=list)


def _candidates(family: Family, alphabet: int, max_len: int, budget: int, seed: int,
                windows: tuple):
    """Yield ``(text, config)`` pairs: exhaustive short texts first, then random longer ones."""
    rng = random.Random(seed)
    produced = 0
    if family is Family.STATIC:
        while produced < budget:
            phrases = random_phrases(rng, alphabet, rng.randint(1, 6), 4)
            text = random_text(rng, rng.randint(1, max_len), alphabet, rng.choice(GENERATORS))
            yield text, DictionaryConfig.static(phrases)
            produced += 1
        return

    def config(k: int) -> DictionaryConfig:
        if family is Family.LZ78:
            return DictionaryConfig.lz78()
        return DictionaryConfig.lz77(windows[k % len(windows)])

    # exhaustive over every length whose whole level still fits in half the budget
    exhaustive_top, total = 0, 0
    while exhaustive_top < max_len and total + alphabet ** (exhaustive_top + 1) <= budget // 2:
        exhaustive_top += 1
        total += alphabet ** exhaustive_top
    for length in range(1, exhaustive_top + 1):
        for text in all_texts(alphabet, length):
            for k in range(1 if family is Family.LZ78 else len(windows)):
                if produced >= budget:
                    return
                yield text, config(k)
                produced += 1
    low = exhaustive_top + 1 if exhaustive_top < max_len else 1
    while produced < budget:
        text = random_text(rng, rng.randint(low, max_len), alphabet, GENERATORS[produced % 2])
        yield text, config(produced)
        produced += 1


def search_greedy_gap(family: Family | str, alphabet_size: int = 2, max_len: int = 24,
                      budget: int = 100_000, seed: int = 0, window: int | None = None,
                      windows: tuple | None = None) -> GapSearch:
    """Look for a text on which greedy needs strictly more tokens than the optimum.

    Each candidate is screened against the shortest-path parse; a candidate is
    only reported once the exhaustive oracle confirms the gap.
    """
    from .parsers import greedy_parse, optimal_parse

    family = Family(family)
    if family is Family.LZ77:
        windows = windows or ((window,) if window is not None else (1, 2, 4, 8, None))
    else:
        windows = ()
    if max_len > 24:
        raise ValueError("max_len is limited to 24")
    result = GapSearch(family, windows=windows)
    confirm_limits = ScaleLimits(max_brute=max(24, max_len), max_graph=None)
    for text, config in _candidates(family, alphabet_size, max_len, budget, seed, windows):
        result.explored += 1
        greedy = greedy_parse(config, text)
        optimal = optimal_parse(config, text, confirm_limits)
        if greedy.token_count <= optimal.token_count:
            continue
        count, witness = brute_force_optimal(config, text, confirm_limits)
        if count != optimal.token_count:
            raise RuntimeError(f"oracle ({count}) and shortest path ({optimal.token_count}) "
                               f"disagree on {text!r} under {config.describe()}")
        result.found = GapInstance(text, config, greedy, witness, count)
        break
    return result
