"""MSB-first fixed-width bit fields over a byte buffer."""

from __future__ import annotations

from .core import LzplError


class TruncatedStream(LzplError, EOFError):
    pass


class BitWriter:
    def __init__(self):
        self.buf = bytearray()
        self._acc = 0
        self._nacc = 0
        self.bits_written = 0

    def write(self, value: int, nbits: int) -> None:
        if nbits == 0:
            return
        if value < 0 or value >> nbits:
            raise ValueError(f"{value} does not fit in {nbits} bits")
        self._acc = (self._acc << nbits) | value
        self._nacc += nbits
        self.bits_written += nbits
        while self._nacc >= 8:
            self._nacc -= 8
            self.buf.append((self._acc >> self._nacc) & 0xFF)
        self._acc &= (1 << self._nacc) - 1

    def getvalue(self) -> bytes:
        """Written bits, zero-padded on the right to a whole byte."""
        if self._nacc:
            return bytes(self.buf) + bytes([(self._acc << (8 - self._nacc)) & 0xFF])
        return bytes(self.buf)


class BitReader:
    def __init__(self, data: bytes, start: int = 0):
        self.data = data
        self.pos = start
        self._acc = 0
        self._nacc = 0

    def read(self, nbits: int) -> int:
        while self._nacc < nbits:
            if self.pos >= len(self.data):
                raise TruncatedStream(f"needed {nbits} bits, stream exhausted")
            self._acc = (self._acc << 8) | self.data[self.pos]
            self.pos += 1
            self._nacc += 8
        self._nacc -= nbits
        value = self._acc >> self._nacc
        self._acc &= (1 << self._nacc) - 1
        return value
