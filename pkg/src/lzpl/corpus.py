"""Seeded generators for test texts and static dictionaries."""

from __future__ import annotations

import itertools
import random
from typing import Iterator

GENERATORS = ("iid", "repetitive")


def iid_text(rng: random.Random, length: int, alphabet: int) -> bytes:
    """Uniform i.i.d. symbols over byte values ``0 .. alphabet-1``."""
    return bytes(rng.choices(range(alphabet), k=length))


def repetitive_text(rng: random.Random, length: int, alphabet: int) -> bytes:
    """A random seed string repeated to ``length`` with a few point mutations.

    i.i.d. texts over larger alphabets rarely contain long repeats; this one
    produces them on purpose.
    """
    if length == 0:
        return b""
    period = rng.randint(1, max(1, length // 3))
    seed = iid_text(rng, period, alphabet)
    out = bytearray((seed * (length // period + 1))[:length])
    for _ in range(rng.randint(0, max(1, length // 8))):
        out[rng.randrange(length)] = rng.randrange(alphabet)
    return bytes(out)


def random_text(rng: random.Random, length: int, alphabet: int, generator: str = "iid") -> bytes:
    if generator == "iid":
        return iid_text(rng, length, alphabet)
    if generator == "repetitive":
        return repetitive_text(rng, length, alphabet)
    raise ValueError(f"unknown generator {generator!r}")


def all_texts(alphabet: int, length: int) -> Iterator[bytes]:
    for symbols in itertools.product(range(alphabet), repeat=length):
        yield bytes(symbols)


def shortlex(alphabet: int, max_length: int, min_length: int = 0) -> Iterator[bytes]:
    for length in range(min_length, max_length + 1):
        yield from all_texts(alphabet, length)


def random_phrases(rng: random.Random, alphabet: int, count: int, max_phrase: int) -> set[bytes]:
    return {iid_text(rng, rng.randint(1, max_phrase), alphabet) for _ in range(count)}


def prefix_closed_dictionary(rng: random.Random, alphabet: int, count: int = 4,
                             max_phrase: int = 5) -> frozenset[bytes]:
    """Random phrases together with all their nonempty prefixes."""
    out = set()
    for w in random_phrases(rng, alphabet, count, max_phrase):
        out.update(w[:k] for k in range(1, len(w) + 1))
    return frozenset(out)


def suffix_closed_dictionary(rng: random.Random, alphabet: int, count: int = 4,
                             max_phrase: int = 5) -> frozenset[bytes]:
    out = set()
    for w in random_phrases(rng, alphabet, count, max_phrase):
        out.update(w[k:] for k in range(len(w)))
    return frozenset(out)


def render(text: bytes) -> str:
    """Readable form for small-alphabet texts: symbols 0..25 print as a..z."""
    if all(b < 26 for b in text):
        return "".join(chr(ord("a") + b) for b in text)
    return text.decode("latin-1")
