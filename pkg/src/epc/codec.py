"""Bit-exact stream codec with a self-describing container.

Container layout: magic "EPC1", one version byte, a tagged code descriptor
(Golomb parameter, explicit canonical lengths, or unary-ended head lengths),
a 64-bit little-endian symbol count, then the payload bits MSB-first and
zero-padded to a byte boundary.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Union

from .bits import (BitReader, BitWriter, canonical_codewords,
                   canonical_with_spine, uleb128_decode, uleb128_encode)
from .errors import ContainerError
from .golomb import GolombCode
from .light_tail import UnaryEndedCode

__all__ = ["ExplicitCode", "CodeSpec", "encode", "decode", "read_container",
           "MAGIC", "VERSION"]

MAGIC = b"EPC1"
VERSION = 1

_TAG_GOLOMB = 0x01
_TAG_EXPLICIT = 0x02
_TAG_UNARY_ENDED = 0x03


@dataclass(frozen=True)
class ExplicitCode:
    """Finite prefix code in canonical order, so lengths identify it."""

    codewords: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "codewords",
                           tuple(str(w) for w in self.codewords))
        if not self.codewords:
            raise ValueError("need at least one codeword")
        if any(not w or set(w) - {"0", "1"} for w in self.codewords):
            raise ValueError("codewords must be nonempty bit strings")
        if self.codewords != canonical_codewords(len(w) for w in self.codewords):
            raise ValueError(
                "explicit codes are stored canonically; build via from_lengths")

    @classmethod
    def from_lengths(cls, lengths) -> "ExplicitCode":
        return cls(canonical_codewords(lengths))

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(w) for w in self.codewords)

    def codeword(self, i: int) -> str:
        if not 0 <= i < len(self.codewords):
            raise ValueError(
                f"symbol {i} outside the {len(self.codewords)}-ary alphabet")
        return self.codewords[i]

    def __str__(self) -> str:
        return f"explicit code on {len(self.codewords)} symbols"


CodeSpec = Union[GolombCode, ExplicitCode, UnaryEndedCode]


def _descriptor(code: CodeSpec) -> bytes:
    if isinstance(code, GolombCode):
        return bytes([_TAG_GOLOMB]) + uleb128_encode(code.k)
    if isinstance(code, ExplicitCode):
        out = bytes([_TAG_EXPLICIT]) + uleb128_encode(len(code.codewords))
        return out + b"".join(uleb128_encode(l) for l in code.lengths)
    if isinstance(code, UnaryEndedCode):
        out = bytes([_TAG_UNARY_ENDED]) + uleb128_encode(code.split)
        lens = list(code.head_lengths) + [len(code.tail_prefix)]
        return out + b"".join(uleb128_encode(l) for l in lens)
    raise TypeError(f"not a code spec: {code!r}")


def encode(symbols, code: CodeSpec) -> bytes:
    writer = BitWriter()
    count = 0
    for sym in symbols:
        sym = int(sym)
        if sym < 0:
            raise ValueError("symbols are nonnegative")
        writer.write_bits(code.codeword(sym))
        count += 1
    header = MAGIC + bytes([VERSION]) + _descriptor(code)
    return header + struct.pack("<Q", count) + writer.getvalue()


def _parse_descriptor(data: bytes, offset: int) -> tuple[CodeSpec, int]:
    if offset >= len(data):
        raise ContainerError("truncated header")
    tag = data[offset]
    offset += 1
    try:
        if tag == _TAG_GOLOMB:
            k, offset = uleb128_decode(data, offset)
            return GolombCode(k), offset
        if tag == _TAG_EXPLICIT:
            count, offset = uleb128_decode(data, offset)
            lengths = []
            for _ in range(count):
                l, offset = uleb128_decode(data, offset)
                lengths.append(l)
            return ExplicitCode.from_lengths(lengths), offset
        if tag == _TAG_UNARY_ENDED:
            split, offset = uleb128_decode(data, offset)
            lengths = []
            for _ in range(split + 2):
                l, offset = uleb128_decode(data, offset)
                lengths.append(l)
            head, spine = canonical_with_spine(lengths[:-1], lengths[-1])
            return UnaryEndedCode(head, spine), offset
    except ValueError as exc:
        raise ContainerError(f"bad code descriptor: {exc}") from exc
    raise ContainerError(f"unknown code descriptor tag {tag:#x}")


def _read_symbol(reader: BitReader, code: CodeSpec, table) -> int:
    if isinstance(code, GolombCode):
        run = 0
        while reader.read_bit():
            run += 1
        g = code.suffix_bits
        if g == 1:
            return run * code.k
        value = 0
        for _ in range(g - 1):
            value = (value << 1) | reader.read_bit()
        if value >= code.short_count:
            value = ((value << 1) | reader.read_bit()) - code.short_count
        return run * code.k + value
    # table-driven walk for the finite(-headed) codes
    word = ""
    limit = table["limit"]
    while len(word) <= limit:
        word += "1" if reader.read_bit() else "0"
        sym = table["words"].get(word)
        if sym is not None:
            return sym
        if word == table.get("tail_prefix"):
            run = 0
            while reader.read_bit():
                run += 1
            return table["tail_start"] + run
    raise ContainerError("payload does not match the declared code")


def _decode_table(code: CodeSpec) -> dict:
    if isinstance(code, GolombCode):
        return {}
    if isinstance(code, ExplicitCode):
        return {"words": {w: i for i, w in enumerate(code.codewords)},
                "limit": max(len(w) for w in code.codewords)}
    if isinstance(code, UnaryEndedCode):
        return {"words": {w: i for i, w in enumerate(code.head_codewords)},
                "tail_prefix": code.tail_prefix,
                "tail_start": code.tail_start,
                "limit": max(max(len(w) for w in code.head_codewords),
                             len(code.tail_prefix))}
    raise TypeError(f"not a code spec: {code!r}")


def read_container(data: bytes) -> tuple[CodeSpec, list[int]]:
    if len(data) < 5:
        raise ContainerError("container shorter than its fixed header")
    if data[:4] != MAGIC:
        raise ContainerError("bad magic")
    if data[4] != VERSION:
        raise ContainerError(f"unsupported version {data[4]}")
    code, offset = _parse_descriptor(data, 5)
    if offset + 8 > len(data):
        raise ContainerError("truncated header")
    (count,) = struct.unpack_from("<Q", data, offset)
    reader = BitReader(data, offset + 8)
    table = _decode_table(code)
    symbols = [_read_symbol(reader, code, table) for _ in range(count)]
    if reader.remaining_bits() >= 8:
        raise ContainerError("extra bytes after the payload")
    if not reader.padding_is_zero():
        raise ContainerError("nonzero padding bits")
    return code, symbols


def decode(data: bytes) -> list[int]:
    return read_container(data)[1]
