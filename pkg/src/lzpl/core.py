"""Value types shared by every part of the package: tokens, parsings, configs.

A text is plain ``bytes``. Positions are 0-based and the dictionary at time
``i`` is the dictionary after ``text[:i]`` has been processed, so the LZ77
window at time ``i`` is the half-open slice ``text[max(0, i - h):i]``. With
1-based inclusive indexing that is the usual ``T[i-h+1..i]`` window over the
last ``h`` processed symbols.
"""

from __future__ import annotations

import enum
import json
import os
from dataclasses import dataclass, replace
from typing import Iterable, Sequence, Union

Text = bytes

SCALE_ENV = "LZPL_SCALE_LIMITS"


class LzplError(Exception):
    """Base class for all errors raised by this package."""


class PointerOutOfRange(LzplError, ValueError):
    pass


class UnknownPhrase(LzplError, ValueError):
    pass


class ScaleExceeded(LzplError, ValueError):
    pass


class FamilyMismatch(LzplError, ValueError):
    pass


class Family(enum.Enum):
    LZ77 = "lz77"
    LZ78 = "lz78"
    STATIC = "static"


@dataclass(frozen=True, slots=True)
class Literal:
    symbol: int

    def __post_init__(self):
        if not 0 <= self.symbol < 256:
            raise ValueError(f"literal symbol out of byte range: {self.symbol}")

    @property
    def length(self) -> int:
        return 1


@dataclass(frozen=True, slots=True)
class Pointer:
    """Backward reference: copy ``length`` symbols starting ``offset`` positions back."""

    offset: int
    length: int

    def __post_init__(self):
        if self.offset < 1 or self.length < 1:
            raise ValueError(f"pointer needs offset >= 1 and length >= 1, got {self}")


@dataclass(frozen=True, slots=True)
class Phrase:
    """Direct reference to an entry of a static dictionary."""

    data: bytes

    def __post_init__(self):
        if not self.data:
            raise ValueError("empty phrase")

    @property
    def length(self) -> int:
        return len(self.data)


Token = Union[Literal, Pointer, Phrase]


def is_dictionary_token(token: Token) -> bool:
    return not isinstance(token, Literal)


@dataclass(frozen=True)
class Parsing:
    tokens: tuple[Token, ...] = ()
    starts: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.tokens) != len(self.starts):
            raise ValueError("tokens and starts differ in length")
        pos = 0
        for token, start in zip(self.tokens, self.starts):
            if start != pos:
                raise ValueError(f"token starts at {start}, expected {pos}")
            pos += token.length

    @classmethod
    def from_tokens(cls, tokens: Iterable[Token]) -> "Parsing":
        tokens = tuple(tokens)
        starts = []
        pos = 0
        for token in tokens:
            starts.append(pos)
            pos += token.length
        return cls(tokens, tuple(starts))

    @property
    def token_count(self) -> int:
        return len(self.tokens)

    @property
    def covered(self) -> int:
        """Number of text symbols the parsing spans."""
        if not self.tokens:
            return 0
        return self.starts[-1] + self.tokens[-1].length

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)


@dataclass(frozen=True)
class DictionaryConfig:
    """Which dynamic dictionary a parser works against.

    ``window`` is the LZ77 bound ``h``; ``None`` means unbounded, which behaves
    exactly like any ``h >= len(text)``. ``max_length`` caps phrase length (the
    codec uses it to fit the length field); ``None`` means no cap.
    """

    family: Family = Family.LZ77
    window: int | None = None
    allow_overlap: bool = False
    phrases: frozenset[bytes] = frozenset()
    max_length: int | None = None

    def __post_init__(self):
        if not isinstance(self.family, Family):
            object.__setattr__(self, "family", Family(self.family))
        if self.window is not None and self.window < 1:
            raise ValueError(f"window must be positive, got {self.window}")
        if self.max_length is not None and self.max_length < 1:
            raise ValueError(f"max_length must be positive, got {self.max_length}")
        phrases = frozenset(bytes(p) for p in self.phrases)
        if b"" in phrases:
            raise ValueError("static dictionary contains the empty phrase")
        if phrases and self.family is not Family.STATIC:
            raise ValueError("phrases are only meaningful for the static family")
        object.__setattr__(self, "phrases", phrases)

    @classmethod
    def lz77(cls, window: int | None = None, **kw) -> "DictionaryConfig":
        return cls(Family.LZ77, window=window, **kw)

    @classmethod
    def lz78(cls, **kw) -> "DictionaryConfig":
        return cls(Family.LZ78, **kw)

    @classmethod
    def static(cls, phrases: Iterable[bytes], **kw) -> "DictionaryConfig":
        return cls(Family.STATIC, phrases=frozenset(phrases), **kw)

    def with_(self, **changes) -> "DictionaryConfig":
        return replace(self, **changes)

    def describe(self) -> str:
        if self.family is Family.LZ77:
            h = "unbounded" if self.window is None else str(self.window)
            return f"lz77(h={h}{', overlap' if self.allow_overlap else ''})"
        if self.family is Family.STATIC:
            return f"static({len(self.phrases)} phrases)"
        return "lz78"


@dataclass
class ParseStats:
    token_count: int = 0
    pointer_count: int = 0
    literal_count: int = 0
    encoded_bits: int = 0


@dataclass(frozen=True)
class ScaleLimits:
    """Input bounds past which the exhaustive machinery refuses to run."""

    max_text: int = 256  # property checkers
    max_window: int = 64  # property checkers, effective LZ77 window
    max_graph: int | None = 4096  # parse-graph construction
    max_brute: int = 20  # exhaustive oracle

    @classmethod
    def from_env(cls, env: str | None = None) -> "ScaleLimits":
        """Read overrides such as ``max_text=512,max_graph=none`` (or JSON)."""
        raw = os.environ.get(SCALE_ENV, "") if env is None else env
        raw = raw.strip()
        if not raw:
            return cls()
        if raw.startswith("{"):
            items = json.loads(raw)
        else:
            items = dict(part.split("=", 1) for part in raw.split(",") if part.strip())
        kw = {}
        for key, value in items.items():
            key = key.strip()
            if not key.startswith("max_"):
                key = "max_" + key
            if key not in cls.__dataclass_fields__:
                raise ValueError(f"unknown scale limit {key!r}")
            if isinstance(value, str):
                value = value.strip()
                value = None if value.lower() in ("none", "unbounded") else int(value)
            kw[key] = value
        return cls(**kw)


def require_scale(what: str, value: int, bound: int | None) -> None:
    if bound is not None and value > bound:
        raise ScaleExceeded(f"{what} = {value} exceeds the configured bound {bound}")


def expand(parsing: Parsing | Sequence[Token], config: DictionaryConfig | None = None) -> Text:
    """Rebuild the text a parsing denotes.

    Pointers copy from already reconstructed output; with overlap disabled a
    pointer may not reach into the symbols it is producing.
    """
    config = config or DictionaryConfig()
    tokens = parsing.tokens if isinstance(parsing, Parsing) else tuple(parsing)
    out = bytearray()
    for token in tokens:
        if isinstance(token, Literal):
            out.append(token.symbol)
        elif isinstance(token, Pointer):
            pos = len(out)
            if token.offset > pos:
                raise PointerOutOfRange(f"{token} at position {pos} reaches before the start")
            if config.family is Family.LZ77 and config.window is not None and token.offset > config.window:
                raise PointerOutOfRange(f"{token} at position {pos} exceeds window {config.window}")
            if token.length > token.offset and not config.allow_overlap:
                raise PointerOutOfRange(f"{token} at position {pos} overlaps its own output")
            src = pos - token.offset
            if token.length <= token.offset:
                out += out[src:src + token.length]
            else:
                for j in range(token.length):
                    out.append(out[src + j])
        elif isinstance(token, Phrase):
            if config.family is not Family.STATIC or token.data not in config.phrases:
                raise UnknownPhrase(f"{token.data!r} is not in the static dictionary")
            out += token.data
        else:
            raise TypeError(f"not a token: {token!r}")
    return bytes(out)


def stats(parsing: Parsing | Sequence[Token]) -> ParseStats:
    tokens = parsing.tokens if isinstance(parsing, Parsing) else tuple(parsing)
    literals = sum(1 for t in tokens if isinstance(t, Literal))
    return ParseStats(
        token_count=len(tokens),
        pointer_count=len(tokens) - literals,
        literal_count=literals,
    )


def token_to_json(token: Token) -> dict:
    if isinstance(token, Literal):
        return {"kind": "literal", "symbol": token.symbol}
    if isinstance(token, Pointer):
        return {"kind": "pointer", "offset": token.offset, "length": token.length}
    return {"kind": "phrase", "hex": token.data.hex(), "length": token.length}


def format_token(token: Token) -> str:
    if isinstance(token, Literal):
        return f"Lit({bytes([token.symbol])!r})"
    if isinstance(token, Pointer):
        return f"Ptr({token.offset},{token.length})"
    return f"Phr({token.data!r})"
