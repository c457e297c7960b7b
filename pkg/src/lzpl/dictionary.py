"""Dynamic dictionaries queried at a point in time, plus closure-property checkers.

Every dictionary answers three questions about time ``i`` (after ``text[:i]``
has been processed): is ``w`` a phrase, which phrase lengths match the text
starting at ``i``, and what is the longest one. Query methods scan the text or
the phrase table directly; only the property checkers materialize whole phrase
sets, which is why they are guarded by :class:`~lzpl.core.ScaleLimits`.
"""

from __future__ import annotations

from dataclasses import dataclass
from operator import itemgetter
from typing import Iterable

from .core import (
    DictionaryConfig,
    Family,
    Phrase,
    Pointer,
    ScaleLimits,
    Text,
    Token,
    require_scale,
)


def phrase_order(w: bytes) -> tuple[int, bytes]:
    """Canonical phrase ordering: shorter first, then bytewise."""
    return len(w), w


class SlidingWindowDictionary:
    """LZ77 dictionary: the nonempty factors of the last ``window`` symbols.

    Matches are located with ``bytes.rfind`` restricted to the window, so the
    rightmost occurrence (smallest backward offset) is always the one reported.
    """

    family = Family.LZ77

    def __init__(self, text: Text, window: int | None = None, allow_overlap: bool = False,
                 max_length: int | None = None):
        self.text = bytes(text)
        self.window = window
        self.allow_overlap = allow_overlap
        self.max_length = max_length

    def window_start(self, time: int) -> int:
        if self.window is None:
            return 0
        return max(0, time - self.window)

    def _find_end(self, time: int, length: int) -> int:
        # an occurrence must start before `time`; without overlap it must also end by it
        if self.allow_overlap:
            return min(len(self.text), time - 1 + length)
        return time

    def _cap(self, i: int) -> int:
        cap = len(self.text) - i
        if not self.allow_overlap:
            cap = min(cap, i - self.window_start(i))
        if self.max_length is not None:
            cap = min(cap, self.max_length)
        return cap

    def contains(self, time: int, w: bytes) -> bool:
        if not w or time <= 0:
            return False
        if self.max_length is not None and len(w) > self.max_length:
            return False
        return self.text.find(w, self.window_start(time), self._find_end(time, len(w))) != -1

    def occurrence(self, i: int, length: int) -> int:
        """Start of the rightmost window occurrence of ``text[i:i+length]``, or -1."""
        if length < 1 or i <= 0:
            return -1
        pattern = self.text[i:i + length]
        if len(pattern) < length:
            return -1
        return self.text.rfind(pattern, self.window_start(i), self._find_end(i, length))

    def match_lengths(self, i: int) -> list[int]:
        # an occurrence of text[i:i+n+1] starting in the window holds one of text[i:i+n]
        # ending no later, so the matching lengths are exactly 1..longest
        return list(range(1, self.longest_match(i)[0] + 1))

    def longest_match(self, i: int) -> tuple[int, int | None]:
        cap = self._cap(i)
        if cap < 1 or self.occurrence(i, 1) == -1:
            return 0, None
        # window factors are prefix-closed, so membership is monotone in length
        good, step = 1, 1
        while good < cap:
            probe = min(cap, good + step)
            if self.occurrence(i, probe) == -1:
                break
            good = probe
            step *= 2
        else:
            return good, i - self.occurrence(i, good)
        hi = probe  # known miss
        while hi - good > 1:
            mid = (good + hi) // 2
            if self.occurrence(i, mid) != -1:
                good = mid
            else:
                hi = mid
        return good, i - self.occurrence(i, good)

    def token(self, i: int, length: int) -> Token:
        start = self.occurrence(i, length)
        if start == -1:
            raise ValueError(f"text[{i}:{i + length}] is not in the dictionary at time {i}")
        return Pointer(i - start, length)

    def phrases_at(self, time: int) -> set[bytes]:
        lo = self.window_start(time)
        text, n = self.text, len(self.text)
        top = self.max_length or n
        out = set()
        for s in range(lo, time):
            end = n if self.allow_overlap else time
            for e in range(s + 1, min(end, s + top) + 1):
                out.add(text[s:e])
        return out


@dataclass(frozen=True)
class Insertion:
    time: int  # first time the phrase is usable
    phrase: bytes


class LZ78Dictionary:
    """LZ78 phrase table built by greedy replay over a text.

    At each phrase boundary ``i`` the longest current phrase ``w`` (possibly
    empty) is extended by the next symbol and inserted; it becomes usable at
    time ``i + len(w) + 1``, the first moment the whole new phrase has been
    read. The table only grows, and every inserted phrase occurs inside the
    text already processed when it becomes usable.
    """

    family = Family.LZ78

    def __init__(self, text: Text, log: Iterable[Insertion], max_length: int | None = None):
        self.text = bytes(text)
        self.log = tuple(log)
        self.available = {ins.phrase: ins.time for ins in self.log}
        self.longest = max((len(p) for p in self.available), default=0)
        self.max_length = max_length

    def contains(self, time: int, w: bytes) -> bool:
        if self.max_length is not None and len(w) > self.max_length:
            return False
        return self.available.get(w, time + 1) <= time

    def _cap(self, i: int) -> int:
        cap = min(self.longest, len(self.text) - i)
        if self.max_length is not None:
            cap = min(cap, self.max_length)
        return cap

    def match_lengths(self, i: int) -> list[int]:
        return [n for n in range(1, self._cap(i) + 1) if self.contains(i, self.text[i:i + n])]

    def longest_match(self, i: int) -> tuple[int, int | None]:
        n = 0
        cap = self._cap(i)
        while n < cap and self.contains(i, self.text[i:i + n + 1]):
            n += 1
        if n == 0:
            return 0, None
        return n, i - self.text.rfind(self.text[i:i + n], 0, i)

    def token(self, i: int, length: int) -> Token:
        w = self.text[i:i + length]
        if not self.contains(i, w):
            raise ValueError(f"{w!r} is not in the dictionary at time {i}")
        return Pointer(i - self.text.rfind(w, 0, i), length)

    def phrases_at(self, time: int) -> set[bytes]:
        return {p for p in self.available if self.contains(time, p)}


def lz78_trace(text: Text, max_length: int | None = None) -> LZ78Dictionary:
    text = bytes(text)
    log = []
    table: dict[bytes, int] = {}
    i = 0
    while i < len(text):
        n = 0
        while i + n < len(text) and text[i:i + n + 1] in table:
            n += 1
        if i + n == len(text):
            break
        phrase = text[i:i + n + 1]
        table[phrase] = i + n + 1
        log.append(Insertion(i + n + 1, phrase))
        i += n + 1
    return LZ78Dictionary(text, log, max_length=max_length)


class StaticDictionary:
    """A fixed phrase set; identical at every time."""

    family = Family.STATIC

    def __init__(self, phrases: Iterable[bytes], text: Text = b"", max_length: int | None = None):
        self.phrases = frozenset(bytes(p) for p in phrases)
        if b"" in self.phrases:
            raise ValueError("static dictionary contains the empty phrase")
        self.text = bytes(text)
        self.max_length = max_length
        self.lengths = sorted({len(p) for p in self.phrases
                               if max_length is None or len(p) <= max_length})

    def contains(self, time: int, w: bytes) -> bool:
        return w in self.phrases and (self.max_length is None or len(w) <= self.max_length)

    def match_lengths(self, i: int) -> list[int]:
        rest = len(self.text) - i
        return [n for n in self.lengths if n <= rest and self.text[i:i + n] in self.phrases]

    def longest_match(self, i: int) -> tuple[int, None]:
        found = self.match_lengths(i)
        return (found[-1] if found else 0), None

    def token(self, i: int, length: int) -> Token:
        w = self.text[i:i + length]
        if w not in self.phrases:
            raise ValueError(f"{w!r} is not in the static dictionary")
        return Phrase(w)

    def phrases_at(self, time: int) -> set[bytes]:
        return {p for p in self.phrases if self.contains(time, p)}


Dictionary = SlidingWindowDictionary | LZ78Dictionary | StaticDictionary


def open_dictionary(config: DictionaryConfig, text: Text) -> Dictionary:
    """Bind a dictionary config to a concrete text."""
    if config.family is Family.LZ77:
        return SlidingWindowDictionary(text, config.window, config.allow_overlap, config.max_length)
    if config.family is Family.LZ78:
        return lz78_trace(text, max_length=config.max_length)
    return StaticDictionary(config.phrases, text, max_length=config.max_length)


def contains(config: DictionaryConfig, text: Text, time: int, w: bytes) -> bool:
    if not 0 <= time <= len(text):
        raise ValueError(f"time {time} outside 0..{len(text)}")
    return open_dictionary(config, text).contains(time, w)


def longest_match(config: DictionaryConfig, text: Text, i: int) -> tuple[int, int | None]:
    return open_dictionary(config, text).longest_match(i)


def match_lengths(config: DictionaryConfig, text: Text, i: int) -> set[int]:
    return set(open_dictionary(config, text).match_lengths(i))


def load_phrase_file(path) -> frozenset[bytes]:
    """Read a newline-delimited phrase list; blank lines are skipped."""
    with open(path, "rb") as fh:
        data = fh.read()
    return frozenset(line for line in data.split(b"\n") if line)


# ---------------------------------------------------------------------------
# property checkers


@dataclass(frozen=True)
class Witness:
    condition: str
    time: int | None = None
    phrase: bytes | None = None
    k: int | None = None
    missing: bytes | None = None
    checked_time: int | None = None
    edge: tuple[int, int] | None = None

    def to_json(self) -> dict:
        out = {"condition": self.condition}
        for key in ("time", "k", "checked_time"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        for key in ("phrase", "missing"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value.decode("latin-1")
                out[key + "_hex"] = value.hex()
        if self.edge is not None:
            out["edge"] = list(self.edge)
        return out


@dataclass(frozen=True)
class PropertyReport:
    holds: bool
    witness: Witness | None = None

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("a report holds exactly when it carries no witness")

    def __bool__(self) -> bool:
        return self.holds

    @classmethod
    def ok(cls) -> "PropertyReport":
        return cls(True)

    @classmethod
    def fail(cls, witness: Witness) -> "PropertyReport":
        return cls(False, witness)


def _as_phrases(D) -> list[bytes]:
    phrases = D.phrases if isinstance(D, (StaticDictionary, DictionaryConfig)) else D
    return sorted((bytes(p) for p in phrases), key=phrase_order)


def is_suffix_closed_static(D) -> PropertyReport:
    members = set(_as_phrases(D))
    for w in _as_phrases(D):
        for k in range(1, len(w)):
            if w[k:] not in members:
                return PropertyReport.fail(Witness("suffix missing", phrase=w, k=k, missing=w[k:]))
    return PropertyReport.ok()


def is_prefix_closed_static(D) -> PropertyReport:
    members = set(_as_phrases(D))
    for w in _as_phrases(D):
        for k in range(1, len(w)):
            if w[:k] not in members:
                return PropertyReport.fail(Witness("prefix missing", phrase=w, k=k, missing=w[:k]))
    return PropertyReport.ok()


def _check_scale(config: DictionaryConfig, text: Text, limits: ScaleLimits | None) -> None:
    limits = limits or ScaleLimits.from_env()
    require_scale("text length", len(text), limits.max_text)
    if config.family is Family.LZ77:
        require_scale("effective window", min(config.window or len(text), len(text)),
                      limits.max_window)


def dictionary_timeline(config: DictionaryConfig, text: Text,
                        limits: ScaleLimits | None = None) -> list[set[bytes]]:
    """Materialize ``D_0 .. D_n`` as explicit phrase sets."""
    _check_scale(config, text, limits)
    d = open_dictionary(config, text)
    return [d.phrases_at(t) for t in range(len(text) + 1)]


_drop_first = itemgetter(slice(1, None))


def check_dynamic_suffix_closed(config: DictionaryConfig, text: Text,
                                limits: ScaleLimits | None = None) -> PropertyReport:
    """Check that every suffix ``w[k:]`` of a phrase ``w`` in ``D_i`` lies in ``D_i`` and ``D_{i+k}``.

    ``k`` runs over ``0 <= k < len(w)``; ``k = 0`` asks for ``w`` itself and is
    kept, it can never fail. Times run over the text's lifetime ``0..n``; a
    second condition that would land past ``n`` is not checked.
    """
    timeline = dictionary_timeline(config, text, limits)
    n = len(text)
    for i, current in enumerate(timeline):
        # suffixes[k] == {w[k:] for w in D_i if len(w) > k}, built by trimming one symbol per step
        k, suffixes = 0, current
        while suffixes:
            if not suffixes <= current or (i + k <= n and not suffixes <= timeline[i + k]):
                return _first_suffix_failure(timeline, i)
            k += 1
            suffixes = set(map(_drop_first, suffixes))
            suffixes.discard(b"")
    return PropertyReport.ok()


def _first_suffix_failure(timeline: list[set[bytes]], i: int) -> PropertyReport:
    n = len(timeline) - 1
    for w in sorted(timeline[i], key=phrase_order):
        for k in range(len(w)):
            u = w[k:]
            if u not in timeline[i]:
                return PropertyReport.fail(Witness("suffix not in D_i", time=i, phrase=w, k=k,
                                                   missing=u, checked_time=i))
            if i + k <= n and u not in timeline[i + k]:
                return PropertyReport.fail(Witness("suffix not in D_i+k", time=i, phrase=w, k=k,
                                                   missing=u, checked_time=i + k))
    raise AssertionError(f"no failing suffix at time {i}")


def check_natural_suffix_closed(config: DictionaryConfig, text: Text,
                                limits: ScaleLimits | None = None) -> PropertyReport:
    """The time-by-time reading: each ``D_i`` on its own is suffix-closed."""
    for i, phrases in enumerate(dictionary_timeline(config, text, limits)):
        report = is_suffix_closed_static(phrases)
        if not report:
            w = report.witness
            return PropertyReport.fail(Witness(w.condition, time=i, phrase=w.phrase, k=w.k,
                                               missing=w.missing, checked_time=i))
    return PropertyReport.ok()


def check_non_decreasing(config: DictionaryConfig, text: Text,
                         limits: ScaleLimits | None = None) -> PropertyReport:
    """``D_i`` is a subset of ``D_j`` whenever ``i <= j``.

    Inclusion is transitive, so consecutive times suffice; the witness names
    the first phrase that drops out between ``time`` and ``checked_time``.
    """
    timeline = dictionary_timeline(config, text, limits)
    for i in range(len(timeline) - 1):
        gone = timeline[i] - timeline[i + 1]
        if gone:
            w = min(gone, key=phrase_order)
            return PropertyReport.fail(Witness("phrase removed", time=i, phrase=w,
                                               missing=w, checked_time=i + 1))
    return PropertyReport.ok()
