"""Bit-level serialization primitives and instance digests.

Labels are bit streams so their sizes can be measured and bounded exactly;
this module holds the writer/reader pair, width helpers, optional-value
encoding, the ExtendedID wire form shared by every labeling scheme, and the
64-bit instance digest that ties a label to the graph snapshot it was built
from (so mismatched label files are rejected instead of misdecoded).
"""

from __future__ import annotations

import hashlib
from typing import Optional

from .graphs import Graph
from .hld import ExtendedID


class InstanceMismatch(ValueError):
    """Labels presented together were built from different instances."""


def width_for(max_value: int) -> int:
    """Bits needed to store any integer in 0..max_value (at least 1)."""
    if max_value < 0:
        raise ValueError("max_value must be nonnegative")
    return max(1, max_value.bit_length())


class BitWriter:
    """Append-only MSB-first bit stream."""

    def __init__(self) -> None:
        self._out = bytearray()
        self._buf = 0
        self._fill = 0
        self._bits = 0

    @property
    def bit_length(self) -> int:
        return self._bits

    def write_uint(self, value: int, width: int) -> None:
        if width < 0:
            raise ValueError("negative width")
        if value < 0 or (width < value.bit_length()):
            raise ValueError(f"value {value} does not fit in {width} bits")
        self._bits += width
        buf = (self._buf << width) | value
        fill = self._fill + width
        while fill >= 8:
            fill -= 8
            self._out.append((buf >> fill) & 0xFF)
        self._buf = buf & ((1 << fill) - 1)
        self._fill = fill

    def write_bool(self, flag: bool) -> None:
        self.write_uint(1 if flag else 0, 1)

    def write_opt_uint(self, value: Optional[int], width: int) -> None:
        """Presence bit followed by the value when present."""
        if value is None:
            self.write_bool(False)
        else:
            self.write_bool(True)
            self.write_uint(value, width)

    def getvalue(self) -> bytes:
        """Bytes of the stream, final partial byte zero-padded."""
        out = bytes(self._out)
        if self._fill:
            out += bytes([(self._buf << (8 - self._fill)) & 0xFF])
        return out


class BitReader:
    """MSB-first reader over bytes produced by BitWriter."""

    def __init__(self, data: bytes, nbits: Optional[int] = None) -> None:
        self._data = data
        self._pos = 0
        self._nbits = 8 * len(data) if nbits is None else nbits
        if self._nbits > 8 * len(data):
            raise ValueError("declared bit length exceeds the buffer")

    @property
    def bits_left(self) -> int:
        return self._nbits - self._pos

    def read_uint(self, width: int) -> int:
        if width < 0:
            raise ValueError("negative width")
        end = self._pos + width
        if end > self._nbits:
            raise ValueError("bit stream exhausted")
        if width == 0:
            return 0
        first = self._pos >> 3
        last = (end + 7) >> 3
        chunk = int.from_bytes(self._data[first:last], "big")
        shift = (last << 3) - end
        self._pos = end
        return (chunk >> shift) & ((1 << width) - 1)

    def read_bool(self) -> bool:
        return self.read_uint(1) == 1

    def read_opt_uint(self, width: int) -> Optional[int]:
        if not self.read_bool():
            return None
        return self.read_uint(width)


# ---------------------------------------------------------------------------
# shared wire forms
# ---------------------------------------------------------------------------


def write_eid(w: BitWriter, eid: ExtendedID, n: int) -> None:
    wv = width_for(max(0, n - 1))
    wt = width_for(n)
    w.write_uint(eid.id, wv)
    w.write_uint(eid.tin, wv)
    w.write_uint(eid.tout, wt)
    w.write_uint(eid.nl, wv)
    w.write_uint(eid.heavy_path, wv)
    if eid.heavy_child_id is None:
        w.write_bool(False)
    else:
        w.write_bool(True)
        w.write_uint(eid.heavy_child_id, wv)
        w.write_uint(eid.heavy_child_tin, wv)
        w.write_uint(eid.heavy_child_tout, wt)


def read_eid(r: BitReader, n: int) -> ExtendedID:
    wv = width_for(max(0, n - 1))
    wt = width_for(n)
    vid = r.read_uint(wv)
    tin = r.read_uint(wv)
    tout = r.read_uint(wt)
    nl = r.read_uint(wv)
    hp = r.read_uint(wv)
    if r.read_bool():
        hid = r.read_uint(wv)
        htin = r.read_uint(wv)
        htout = r.read_uint(wt)
    else:
        hid = htin = htout = None
    return ExtendedID(
        id=vid,
        tin=tin,
        tout=tout,
        heavy_child_id=hid,
        heavy_child_tin=htin,
        heavy_child_tout=htout,
        nl=nl,
        heavy_path=hp,
    )


def instance_hash(
    g: Graph,
    *,
    root: Optional[int] = None,
    scheme: str = "",
    seed: Optional[int] = None,
) -> int:
    """64-bit digest of (graph snapshot, root, scheme, seed).

    Deterministic across processes; any edge, vertex-count, root, scheme or
    seed difference changes it.
    """
    hsh = hashlib.sha256()
    hsh.update(b"FTLB-instance-v1\x00")
    hsh.update(g.n.to_bytes(8, "big"))
    hsh.update(g.m.to_bytes(8, "big"))
    for u, v in sorted(g.edges):
        hsh.update(u.to_bytes(8, "big"))
        hsh.update(v.to_bytes(8, "big"))
    hsh.update(b"|r")
    hsh.update((0 if root is None else root + 1).to_bytes(8, "big"))
    hsh.update(b"|s")
    hsh.update(scheme.encode("utf-8"))
    hsh.update(b"|x")
    hsh.update((0 if seed is None else seed + 1).to_bytes(16, "big", signed=True))
    return int.from_bytes(hsh.digest()[:8], "big")
