"""LZSS-style container: one flag bit per token, fixed-width literal and pointer fields.

Layout (see FORMAT.md)::

    "LZPL" | version u8 | offset_bits u8 | length_bits u8 | text length u64 LE
    then per token, MSB-first:
        0 + 8-bit symbol                                  (literal)
        1 + offset_bits (offset - 1) + length_bits (length - 1)  (pointer)
    zero padding to the next byte boundary
"""

from __future__ import annotations

import enum
import struct
from dataclasses import dataclass

from .bits import BitReader, BitWriter, TruncatedStream
from .core import (
    DictionaryConfig,
    Literal,
    LzplError,
    ParseStats,
    Parsing,
    Pointer,
    PointerOutOfRange,
    ScaleLimits,
    Text,
    stats,
)
from .parsers import flexible_parse, greedy_parse, optimal_parse

MAGIC = b"LZPL"
VERSION = 1
HEADER = struct.Struct("<4sBBBQ")

__all__ = [
    "BadMagic", "CodecParams", "ParamOutOfRange", "Strategy", "TruncatedStream",
    "decode", "encode", "encode_with_stats", "parse_for_codec", "payload_bits",
]


class BadMagic(LzplError, ValueError):
    pass


class ParamOutOfRange(LzplError, ValueError):
    pass


class Strategy(str, enum.Enum):
    GREEDY = "greedy"
    OPTIMAL = "optimal"
    FLEXIBLE = "flexible"


@dataclass(frozen=True)
class CodecParams:
    offset_bits: int = 12
    length_bits: int = 4

    def __post_init__(self):
        if not 1 <= self.offset_bits <= 24:
            raise ParamOutOfRange(f"offset_bits must be in 1..24, got {self.offset_bits}")
        if not 1 <= self.length_bits <= 16:
            raise ParamOutOfRange(f"length_bits must be in 1..16, got {self.length_bits}")

    @property
    def window(self) -> int:
        return 1 << self.offset_bits

    @property
    def max_length(self) -> int:
        return 1 << self.length_bits

    def dictionary(self) -> DictionaryConfig:
        return DictionaryConfig.lz77(self.window, max_length=self.max_length)


def payload_bits(parse_stats: ParseStats, params: CodecParams) -> int:
    return (parse_stats.token_count + 8 * parse_stats.literal_count
            + parse_stats.pointer_count * (params.offset_bits + params.length_bits))


def parse_for_codec(text: Text, params: CodecParams, strategy: Strategy | str = Strategy.GREEDY) -> Parsing:
    config = params.dictionary()
    strategy = Strategy(strategy)
    if strategy is Strategy.GREEDY:
        return greedy_parse(config, text)
    if strategy is Strategy.FLEXIBLE:
        return flexible_parse(config, text)
    # the codec graph has at most 2**length_bits edges per node, so no size bound applies
    return optimal_parse(config, text, ScaleLimits(max_graph=None))


def encode_with_stats(text: Text, params: CodecParams | None = None,
                      strategy: Strategy | str = Strategy.GREEDY) -> tuple[bytes, ParseStats]:
    params = params or CodecParams()
    text = bytes(text)
    parsing = parse_for_codec(text, params, strategy)
    w = BitWriter()
    for token in parsing.tokens:
        if isinstance(token, Literal):
            w.write(token.symbol, 9)  # flag 0 + symbol
        elif isinstance(token, Pointer):
            w.write(1, 1)
            w.write(token.offset - 1, params.offset_bits)
            w.write(token.length - 1, params.length_bits)
        else:
            raise TypeError(f"codec cannot store {token!r}")
    result = stats(parsing)
    result.encoded_bits = w.bits_written
    header = HEADER.pack(MAGIC, VERSION, params.offset_bits, params.length_bits, len(text))
    return header + w.getvalue(), result


def encode(text: Text, params: CodecParams | None = None,
           strategy: Strategy | str = Strategy.GREEDY) -> bytes:
    return encode_with_stats(text, params, strategy)[0]


def read_header(data: bytes) -> tuple[CodecParams, int]:
    if data[:4] != MAGIC:
        if 0 < len(data) < 4 and MAGIC.startswith(data):
            raise TruncatedStream("stream ends inside the magic bytes")
        raise BadMagic(f"not an LZPL stream (starts with {bytes(data[:4])!r})")
    if len(data) < HEADER.size:
        raise TruncatedStream(f"header needs {HEADER.size} bytes, got {len(data)}")
    _, version, offset_bits, length_bits, n = HEADER.unpack_from(data)
    if version != VERSION:
        raise BadMagic(f"unsupported stream version {version}")
    return CodecParams(offset_bits, length_bits), n


def decode(data: bytes) -> bytes:
    data = bytes(data)
    params, n = read_header(data)
    r = BitReader(data, HEADER.size)
    out = bytearray()
    ob, lb = params.offset_bits, params.length_bits
    while len(out) < n:
        if r.read(1) == 0:
            out.append(r.read(8))
            continue
        offset = r.read(ob) + 1
        length = r.read(lb) + 1
        pos = len(out)
        if offset > pos:
            raise PointerOutOfRange(f"offset {offset} at output position {pos}")
        if pos + length > n:
            raise PointerOutOfRange(f"pointer of length {length} at {pos} overruns text length {n}")
        src = pos - offset
        if length <= offset:
            out += out[src:src + length]
        else:
            for j in range(length):
                out.append(out[src + j])
    return bytes(out)
