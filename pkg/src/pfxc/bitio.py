"""MSB-first bit stream writer and peekable reader over byte buffers."""
from __future__ import annotations

from .errors import TruncatedPayloadError


class BitWriter:
    """Accumulates values MSB-first; flush pads the last byte with zeros."""

    def __init__(self):
        self._out = bytearray()
        self._acc = 0
        self._nbits = 0
        self.bits_written = 0

    def put(self, bits: int, length: int) -> None:
        if length == 0:
            return
        if not (0 < length <= 64):
            raise ValueError(f"bit length {length} out of [0, 64]")
        if not (0 <= bits < (1 << length)):
            raise ValueError("value does not fit in the given bit length")
        self._acc = (self._acc << length) | bits
        self._nbits += length
        self.bits_written += length
        while self._nbits >= 8:
            self._nbits -= 8
            self._out.append((self._acc >> self._nbits) & 0xFF)
        self._acc &= (1 << self._nbits) - 1

    def put_codeword(self, cw) -> None:
        self.put(cw.bits, cw.len)

    def flush(self) -> None:
        if self._nbits:
            self._out.append((self._acc << (8 - self._nbits)) & 0xFF)
            self._acc = 0
            self._nbits = 0

    def getvalue(self) -> bytes:
        self.flush()
        return bytes(self._out)


class BitReader:
    """Cursor over a byte buffer; peek(k) zero-pads past end of stream,
    consume past the recorded bit length raises."""

    def __init__(self, data: bytes):
        self._data = data
        self._nbits_total = 8 * len(data)
        self._pos = 0  # next byte to load
        self._acc = 0
        self._nbits = 0  # bits currently in _acc
        self.consumed = 0

    def _fill(self, k: int) -> None:
        while self._nbits < k and self._pos < len(self._data):
            self._acc = (self._acc << 8) | self._data[self._pos]
            self._pos += 1
            self._nbits += 8

    def peek(self, k: int) -> int:
        if not (0 <= k <= 64):
            raise ValueError(f"peek width {k} out of [0, 64]")
        self._fill(k)
        if self._nbits >= k:
            return self._acc >> (self._nbits - k)
        # past end: zero-pad on the right
        return self._acc << (k - self._nbits)

    def consume(self, k: int) -> None:
        if self.consumed + k > self._nbits_total:
            raise TruncatedPayloadError("consume past end of stream")
        self._fill(k)
        self._nbits -= k
        self._acc &= (1 << self._nbits) - 1
        self.consumed += k

    def take(self, k: int) -> int:
        v = self.peek(k)
        self.consume(k)
        return v

    @property
    def remaining_bits(self) -> int:
        return self._nbits_total - self.consumed
