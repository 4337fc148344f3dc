"""All-pairs connectivity labels under one vertex fault.

Each vertex stores, for every member b' of its interesting set I(v), the pair
(par(b'), b') plus two facts about the graph with par(b') failed: whether b'
still reaches the component root, and the identifier of b''s component.  A
query <u,v,x> reduces to locating the child of x toward each endpoint (present
in the endpoint's or x's own label) and comparing the stored facts.

The scheme is parameterized over an arbitrary base graph so the two-fault and
many-fault schemes can nest labels computed in G minus a vertex.  Labels carry
a 64-bit instance digest; mixing labels from different instances raises
InstanceMismatch instead of answering.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, FrozenSet, List, Optional, Tuple

from .graphs import Graph, components
from .hld import ANC_DESC, ANC_NONE, HLD, ExtendedID, ancestry, interesting_set
from .wire import (
    BitReader,
    BitWriter,
    InstanceMismatch,
    instance_hash,
    read_eid,
    width_for,
    write_eid,
)

Solver = Callable[[FrozenSet[int]], object]


@dataclass(frozen=True)
class Entry1VFT:
    b: ExtendedID  # the failing vertex: parent of bp
    bp: ExtendedID  # the interesting-set member b'
    conn_s: bool  # does b' reach the component root in G minus b?
    cid: int  # component identifier of b' in G minus b


@dataclass(frozen=True)
class Label1VFT:
    n: int
    instance: int
    owner: ExtendedID
    base_component: int
    entries: Tuple[Entry1VFT, ...]

    # -- serialization ------------------------------------------------------

    def write_payload(self, w: BitWriter) -> None:
        wv = width_for(max(0, self.n - 1))
        write_eid(w, self.owner, self.n)
        w.write_uint(self.base_component, wv)
        w.write_uint(len(self.entries), width_for(self.n))
        for e in self.entries:
            write_eid(w, e.b, self.n)
            write_eid(w, e.bp, self.n)
            w.write_bool(e.conn_s)
            w.write_uint(e.cid, wv)

    @classmethod
    def read_payload(cls, r: BitReader, n: int, instance: int) -> "Label1VFT":
        wv = width_for(max(0, n - 1))
        owner = read_eid(r, n)
        base = r.read_uint(wv)
        count = r.read_uint(width_for(n))
        entries = []
        for _ in range(count):
            b = read_eid(r, n)
            bp = read_eid(r, n)
            conn_s = r.read_bool()
            cid = r.read_uint(wv)
            entries.append(Entry1VFT(b, bp, conn_s, cid))
        return cls(n, instance, owner, base, tuple(entries))

    def to_bytes(self) -> bytes:
        w = BitWriter()
        w.write_uint(self.n, 32)
        w.write_uint(self.instance, 64)
        self.write_payload(w)
        return w.getvalue()

    @classmethod
    def from_bytes(cls, data: bytes) -> "Label1VFT":
        r = BitReader(data)
        n = r.read_uint(32)
        instance = r.read_uint(64)
        return cls.read_payload(r, n, instance)

    @property
    def payload_bits(self) -> int:
        w = BitWriter()
        self.write_payload(w)
        return w.bit_length


def encode_1vft(
    g: Graph, h: HLD, solver: Optional[Solver] = None, *, scheme: str = "1vft"
) -> List[Label1VFT]:
    """Labels for every vertex of g, per component, rooted at h's roots."""
    solve = solver if solver is not None else (lambda rem: components(g, rem))
    inst = instance_hash(g, root=h.s, scheme=scheme)
    labels: List[Label1VFT] = []
    for a in range(g.n):
        s = h.base_of(a)
        entries: List[Entry1VFT] = []
        for bp in interesting_set(h, a):
            b = h.parent[bp]
            comps = solve(frozenset((b,)))
            entries.append(
                Entry1VFT(
                    h.eid(b),
                    h.eid(bp),
                    bool(comps.connected(s, bp)),
                    comps.cid_of(bp),
                )
            )
        labels.append(Label1VFT(g.n, inst, h.eid(a), s, tuple(entries)))
    return labels


# ---------------------------------------------------------------------------
# decoding
# ---------------------------------------------------------------------------


def check_instance(*labels: Label1VFT) -> None:
    first = labels[0].instance
    for lb in labels[1:]:
        if lb.instance != first:
            raise InstanceMismatch(
                f"labels from different instances: {first:#x} vs {lb.instance:#x}"
            )


def find_child_entry(lw: Label1VFT, lx: Label1VFT) -> Entry1VFT:
    """The stored entry for the child of x on the tree path toward w.

    The child is either a light ancestor-or-self of w (then w's label has an
    entry whose failing vertex is x) or x's heavy child (then x's own label
    does).
    """
    xid = lx.owner.id
    for e in lw.entries:
        if e.b.id == xid:
            return e
    for e in lx.entries:
        if e.b.id == xid:
            return e
    raise ValueError(
        f"malformed labels: no entry for the child of {xid} toward {lw.owner.id}"
    )


def decode_source(lw: Label1VFT, lx: Label1VFT) -> Tuple[bool, Optional[int]]:
    """(is w connected to its component root in G minus x, component id if not).

    w = x answers (False, None) in line with the convention that a failed
    vertex is connected to nothing.
    """
    check_instance(lw, lx)
    if lw.owner.id == lx.owner.id:
        return False, None
    rel = ancestry(lx.owner, lw.owner)
    if rel in (ANC_NONE, ANC_DESC):
        # x is not an ancestor of w: the tree path from w to its root survives
        return True, None
    e = find_child_entry(lw, lx)
    return e.conn_s, e.cid


def decode_1vft(lu: Label1VFT, lv: Label1VFT, lx: Label1VFT) -> bool:
    """Are u and v connected once x fails?  Pure label arithmetic."""
    check_instance(lu, lv, lx)
    if lu.owner.id == lx.owner.id or lv.owner.id == lx.owner.id:
        return False
    if lu.owner.id == lv.owner.id:
        return True
    if lu.base_component != lv.base_component:
        return False
    cu, idu = decode_source(lu, lx)
    cv, idv = decode_source(lv, lx)
    if cu and cv:
        return True
    if cu != cv:
        return False
    return idu == idv
