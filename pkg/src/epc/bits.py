"""Bit-level plumbing: MSB-first bit streams, LEB128 varints, and canonical
codeword assignment from length lists."""
from __future__ import annotations

from .errors import ContainerError

__all__ = [
    "BitWriter", "BitReader", "uleb128_encode", "uleb128_decode",
    "kraft_total", "canonical_codewords", "canonical_with_spine",
]


class BitWriter:
    """Accumulates bits MSB-first; bytes() zero-pads the final byte."""

    def __init__(self) -> None:
        self._buf = bytearray()
        self._cur = 0
        self._nbits = 0   # bits pending in _cur, < 8
        self.bit_count = 0

    def write_bits(self, bits: str) -> None:
        cur, nbits = self._cur, self._nbits
        for ch in bits:
            cur = (cur << 1) | (ch == "1")
            nbits += 1
            if nbits == 8:
                self._buf.append(cur)
                cur, nbits = 0, 0
        self._cur, self._nbits = cur, nbits
        self.bit_count += len(bits)

    def getvalue(self) -> bytes:
        out = bytes(self._buf)
        if self._nbits:
            out += bytes([self._cur << (8 - self._nbits)])
        return out


class BitReader:
    """Reads bits MSB-first from a byte buffer starting at a byte offset."""

    def __init__(self, data: bytes, start: int = 0) -> None:
        self._data = data
        self._pos = start * 8

    @property
    def bits_read(self) -> int:
        return self._pos

    def remaining_bits(self) -> int:
        return len(self._data) * 8 - self._pos

    def read_bit(self) -> int:
        if self._pos >= len(self._data) * 8:
            raise ContainerError("truncated payload")
        byte = self._data[self._pos >> 3]
        bit = (byte >> (7 - (self._pos & 7))) & 1
        self._pos += 1
        return bit

    def padding_is_zero(self) -> bool:
        return all(self.read_bit() == 0 for _ in range(self.remaining_bits()))


def uleb128_encode(value: int) -> bytes:
    if value < 0:
        raise ValueError("uleb128 encodes nonnegative integers")
    out = bytearray()
    while True:
        byte = value & 0x7F
        value >>= 7
        out.append(byte | (0x80 if value else 0))
        if not value:
            return bytes(out)


def uleb128_decode(data: bytes, offset: int) -> tuple[int, int]:
    """-> (value, next offset)."""
    value = 0
    shift = 0
    while True:
        if offset >= len(data):
            raise ContainerError("truncated header varint")
        byte = data[offset]
        offset += 1
        value |= (byte & 0x7F) << shift
        if not byte & 0x80:
            return value, offset
        shift += 7
        if shift > 63:
            raise ContainerError("header varint too long")


def kraft_total(lengths, extra_length: int = 0) -> tuple[int, int]:
    """Exact Kraft sum as a pair (numerator, 2**scale): sum of 2**-l plus an
    optional extra 2**-extra_length, in integer arithmetic."""
    ls = list(lengths) + ([extra_length] if extra_length else [])
    if not ls:
        return 0, 1
    scale = max(ls)
    return sum(1 << (scale - l) for l in ls), 1 << scale


def canonical_codewords(lengths) -> tuple[str, ...]:
    """Assign codewords in (length, index) order, each starting where the
    previous ended; needs Kraft sum <= 1."""
    lengths = [int(l) for l in lengths]
    if any(l < 1 for l in lengths):
        raise ValueError("lengths must be positive")
    num, den = kraft_total(lengths)
    if num > den:
        raise ValueError("lengths violate the Kraft inequality")
    out = [""] * len(lengths)
    code = 0
    prev = None
    for length, i in sorted((l, i) for i, l in enumerate(lengths)):
        if prev is not None:
            code <<= length - prev
        out[i] = format(code, "b").zfill(length)
        code += 1
        prev = length
    return tuple(out)


def canonical_with_spine(lengths, spine_length: int) -> tuple[tuple[str, ...], str]:
    """Canonical head codewords leaving the all-1s word of spine_length free.

    Requires the head lengths plus the spine to be Kraft-complete; the
    canonical run then fills code space from the bottom and stops exactly at
    the all-1s subtree, so no head codeword can collide with it.
    """
    if spine_length < 1:
        raise ValueError("spine length must be positive")
    num, den = kraft_total(lengths, extra_length=spine_length)
    if num != den:
        raise ValueError("head lengths plus spine must be Kraft-complete")
    head = canonical_codewords(lengths)
    spine = "1" * spine_length
    for word in head:
        shorter = min(len(word), spine_length)
        if word[:shorter] == spine[:shorter]:
            raise AssertionError("canonical head entered the spine subtree")
    return head, spine
