"""Single-source connectivity labels under one or two vertex faults.

The one-fault label is a bitstring indexed by the owner's interesting set.
The two-fault label glues together four case sublabels — Down, Up, Side,
Independent — picked at decode time by where the second fault sits relative
to the first fault's child toward the target:

* Down: the second fault is below that child; decided by the escape-set
  anchor (alpha), its per-ancestor bitstring, and the re-entry anchor (beta).
* Up: the second fault is a strict ancestor of the first; decided by the
  ladder of anchors a, q, b-per-heavy-path, and c.
* Side: the second fault hangs off another child of the first; either a
  nested one-fault query in the graph minus the first fault (light sibling)
  or the g re-entry point plus restricted Down'/Up' sub-queries (heavy
  sibling).
* Independent: neither fault is an ancestor of the other; decided by the
  escape anchors ell of up to three child positions and the d-table.

Restricted labels (Down'/Up') are the same data with the interesting set
narrowed to the single heavy child; they answer promise-restricted queries
and are embedded where the full label of the relevant vertex is unavailable
at decode time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from .graphs import Graph, components, remove_vertices
from .hld import (
    ANC_DESC,
    ANC_EQUAL,
    ANC_HEAVY,
    ANC_LIGHT,
    ANC_NONE,
    HLD,
    ExtendedID,
    ancestry,
    build_hld,
    interesting_set,
    upper_interesting_set,
)
from .paths import (
    G_AVOIDS,
    G_HIT,
    G_NO_PATH,
    alpha,
    beta,
    d_vertex,
    path_specials,
    up_vertices,
)
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

_G_STATE = {G_NO_PATH: 0, G_AVOIDS: 1, G_HIT: 2}
_G_STATE_INV = {v: k for k, v in _G_STATE.items()}


def _solve_default(g: Graph, solver: Optional[Solver]) -> Solver:
    return solver if solver is not None else (lambda rem: components(g, rem))


def _bump(counters: Optional[Dict[str, int]], key: str) -> None:
    if counters is not None:
        counters[key] = counters.get(key, 0) + 1


# ---------------------------------------------------------------------------
# one-fault single-source labels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LabelSS1F:
    n: int
    instance: int
    owner: ExtendedID
    base_component: int
    bits: Tuple[bool, ...]  # conn(s, b', G\{par(b')}) over I(owner), shallow first
    heavy_bit: Optional[bool]  # conn(s, h(owner), G\{owner}) when h exists

    def write_payload(self, w: BitWriter) -> None:
        wv = width_for(max(0, self.n - 1))
        write_eid(w, self.owner, self.n)
        w.write_uint(self.base_component, wv)
        w.write_uint(len(self.bits), width_for(self.n))
        for bit in self.bits:
            w.write_bool(bit)
        if self.heavy_bit is None:
            w.write_bool(False)
        else:
            w.write_bool(True)
            w.write_bool(self.heavy_bit)

    @classmethod
    def read_payload(cls, r: BitReader, n: int, instance: int) -> "LabelSS1F":
        wv = width_for(max(0, n - 1))
        owner = read_eid(r, n)
        base = r.read_uint(wv)
        count = r.read_uint(width_for(n))
        bits = tuple(r.read_bool() for _ in range(count))
        heavy_bit = r.read_bool() if r.read_bool() else None
        return cls(n, instance, owner, base, bits, heavy_bit)

    def to_bytes(self) -> bytes:
        w = BitWriter()
        w.write_uint(self.n, 32)
        w.write_uint(self.instance, 64)
        self.write_payload(w)
        return w.getvalue()

    @classmethod
    def from_bytes(cls, data: bytes) -> "LabelSS1F":
        r = BitReader(data)
        n = r.read_uint(32)
        instance = r.read_uint(64)
        return cls.read_payload(r, n, instance)

    @property
    def payload_bits(self) -> int:
        w = BitWriter()
        self.write_payload(w)
        return w.bit_length


def _ss1f_vertex(g: Graph, h: HLD, solve: Solver, inst: int, a: int) -> LabelSS1F:
    s = h.base_of(a)
    bits = []
    for bp in interesting_set(h, a):
        b = h.parent[bp]
        bits.append(bool(solve(frozenset((b,))).connected(s, bp)))
    hv = h.heavy[a]
    heavy_bit = None
    if hv is not None:
        heavy_bit = bool(solve(frozenset((a,))).connected(s, hv))
    return LabelSS1F(g.n, inst, h.eid(a), s, tuple(bits), heavy_bit)


def encode_ss1f(
    g: Graph, h: HLD, solver: Optional[Solver] = None, *, scheme: str = "ss1f"
) -> List[LabelSS1F]:
    solve = _solve_default(g, solver)
    inst = instance_hash(g, root=h.s, scheme=scheme)
    return [_ss1f_vertex(g, h, solve, inst, a) for a in range(g.n)]


def check_instance(*labels) -> None:
    first = labels[0].instance
    for lb in labels[1:]:
        if lb.instance != first:
            raise InstanceMismatch(
                f"labels from different instances: {first:#x} vs {lb.instance:#x}"
            )


def decode_ss1f(lt: LabelSS1F, lx: LabelSS1F) -> bool:
    """Is the target still connected to its component root once x fails?"""
    check_instance(lt, lx)
    if lt.owner.id == lx.owner.id:
        return False
    rel = ancestry(lx.owner, lt.owner)
    if rel == ANC_HEAVY:
        return bool(lx.heavy_bit)
    if rel == ANC_LIGHT:
        return lt.bits[lx.owner.nl]
    return True


# ---------------------------------------------------------------------------
# two-fault label pieces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DownEntry:
    b: ExtendedID
    bp: ExtendedID
    alpha: Optional[ExtendedID]
    beta: Optional[ExtendedID]
    bits: Tuple[bool, ...]  # conn(s, bp, G\{b,w}) over the upper set of alpha


@dataclass(frozen=True)
class UpEntry:
    b: ExtendedID
    bp: ExtendedID
    a: Optional[ExtendedID]
    conn_a: bool  # conn(s, bp, G\{b, a})
    bits: Tuple[bool, ...]  # over the upper set of bp


@dataclass(frozen=True)
class BTableEntry:
    qtop: int  # heavy-path identifier
    b: Optional[ExtendedID]
    conn: bool  # conn(s, h(owner), G\{owner, b})


@dataclass(frozen=True)
class DTableEntry:
    qtop: int
    d: Optional[ExtendedID]


@dataclass(frozen=True)
class LabelDPrime:
    owner: ExtendedID
    alpha: Optional[ExtendedID]
    beta: Optional[ExtendedID]
    bits: Tuple[bool, ...]  # over the upper set of alpha, conn(s,h(owner),G\{owner,w})


@dataclass(frozen=True)
class LabelUPrime:
    owner: ExtendedID
    bp: Optional[ExtendedID]  # h(owner)
    a: Optional[ExtendedID]
    conn_a: bool
    bits: Tuple[bool, ...]  # over the upper set of h(owner)
    q_heavy: Optional[ExtendedID]
    c_owner: Optional[ExtendedID]
    btable: Tuple[BTableEntry, ...]


@dataclass(frozen=True)
class SideEntry:
    b: ExtendedID
    bp: ExtendedID
    ss1f_owner: LabelSS1F  # one-fault label of the owner w.r.t. G\{b}
    ss1f_bp: LabelSS1F  # one-fault label of bp w.r.t. G\{b}
    g_state: int  # 0 no path, 1 avoids, 2 hit
    g: Optional[ExtendedID]
    conn_g: bool  # conn(s, bp, G\{b, g})
    dprime_g: Optional[LabelDPrime]
    uprime_g: Optional[LabelUPrime]
    bits: Tuple[bool, ...]  # over the upper set of g


@dataclass(frozen=True)
class IndEntry:
    b: ExtendedID
    bp: ExtendedID
    ell: Optional[ExtendedID]
    bits: Tuple[bool, ...]  # over the upper set of ell


@dataclass(frozen=True)
class LabelSS2F:
    n: int
    instance: int
    owner: ExtendedID
    base_component: int
    ss1f: LabelSS1F
    down: Tuple[DownEntry, ...]
    up: Tuple[UpEntry, ...]
    c_owner: Optional[ExtendedID]
    q_heavy: Optional[ExtendedID]
    btable: Tuple[BTableEntry, ...]
    dprime_self: LabelDPrime
    uprime_self: LabelUPrime
    side: Tuple[SideEntry, ...]
    ind: Tuple[IndEntry, ...]
    dtable: Tuple[DTableEntry, ...]

    # -- serialization ------------------------------------------------------

    def write_payload(self, w: BitWriter) -> None:
        n = self.n
        wv = width_for(max(0, n - 1))
        wc = width_for(n)
        write_eid(w, self.owner, n)
        w.write_uint(self.base_component, wv)
        w.write_uint(self.ss1f.instance, 64)
        self.ss1f.write_payload(w)
        w.write_uint(len(self.down), wc)
        for e in self.down:
            write_eid(w, e.b, n)
            write_eid(w, e.bp, n)
            _write_opt_eid(w, e.alpha, n)
            _write_opt_eid(w, e.beta, n)
            _write_bits(w, e.bits, n)
        w.write_uint(len(self.up), wc)
        for e in self.up:
            write_eid(w, e.b, n)
            write_eid(w, e.bp, n)
            _write_opt_eid(w, e.a, n)
            w.write_bool(e.conn_a)
            _write_bits(w, e.bits, n)
        _write_opt_eid(w, self.c_owner, n)
        _write_opt_eid(w, self.q_heavy, n)
        _write_btable(w, self.btable, n)
        _write_dprime(w, self.dprime_self, n)
        _write_uprime(w, self.uprime_self, n)
        w.write_uint(len(self.side), wc)
        for e in self.side:
            write_eid(w, e.b, n)
            write_eid(w, e.bp, n)
            w.write_uint(e.ss1f_owner.instance, 64)
            e.ss1f_owner.write_payload(w)
            w.write_uint(e.ss1f_bp.instance, 64)
            e.ss1f_bp.write_payload(w)
            w.write_uint(e.g_state, 2)
            _write_opt_eid(w, e.g, n)
            w.write_bool(e.conn_g)
            if e.dprime_g is None:
                w.write_bool(False)
            else:
                w.write_bool(True)
                _write_dprime(w, e.dprime_g, n)
            if e.uprime_g is None:
                w.write_bool(False)
            else:
                w.write_bool(True)
                _write_uprime(w, e.uprime_g, n)
            _write_bits(w, e.bits, n)
        w.write_uint(len(self.ind), wc)
        for e in self.ind:
            write_eid(w, e.b, n)
            write_eid(w, e.bp, n)
            _write_opt_eid(w, e.ell, n)
            _write_bits(w, e.bits, n)
        w.write_uint(len(self.dtable), wc)
        for t in self.dtable:
            w.write_uint(t.qtop, wv)
            _write_opt_eid(w, t.d, n)

    @classmethod
    def read_payload(cls, r: BitReader, n: int, instance: int) -> "LabelSS2F":
        wv = width_for(max(0, n - 1))
        wc = width_for(n)
        owner = read_eid(r, n)
        base = r.read_uint(wv)
        ss1f = LabelSS1F.read_payload(r, n, r.read_uint(64))
        down = tuple(
            DownEntry(
                read_eid(r, n),
                read_eid(r, n),
                _read_opt_eid(r, n),
                _read_opt_eid(r, n),
                _read_bits(r, n),
            )
            for _ in range(r.read_uint(wc))
        )
        up = tuple(
            UpEntry(
                read_eid(r, n),
                read_eid(r, n),
                _read_opt_eid(r, n),
                r.read_bool(),
                _read_bits(r, n),
            )
            for _ in range(r.read_uint(wc))
        )
        c_owner = _read_opt_eid(r, n)
        q_heavy = _read_opt_eid(r, n)
        btable = _read_btable(r, n)
        dprime_self = _read_dprime(r, n)
        uprime_self = _read_uprime(r, n)
        side = []
        for _ in range(r.read_uint(wc)):
            b = read_eid(r, n)
            bp = read_eid(r, n)
            ss1f_owner = LabelSS1F.read_payload(r, n, r.read_uint(64))
            ss1f_bp = LabelSS1F.read_payload(r, n, r.read_uint(64))
            g_state = r.read_uint(2)
            gv = _read_opt_eid(r, n)
            conn_g = r.read_bool()
            dprime_g = _read_dprime(r, n) if r.read_bool() else None
            uprime_g = _read_uprime(r, n) if r.read_bool() else None
            bits = _read_bits(r, n)
            side.append(
                SideEntry(
                    b, bp, ss1f_owner, ss1f_bp, g_state, gv, conn_g,
                    dprime_g, uprime_g, bits,
                )
            )
        ind = tuple(
            IndEntry(
                read_eid(r, n),
                read_eid(r, n),
                _read_opt_eid(r, n),
                _read_bits(r, n),
            )
            for _ in range(r.read_uint(wc))
        )
        dtable = tuple(
            DTableEntry(r.read_uint(wv), _read_opt_eid(r, n))
            for _ in range(r.read_uint(wc))
        )
        return cls(
            n, instance, owner, base, ss1f, down, up, c_owner, q_heavy,
            btable, dprime_self, uprime_self, tuple(side), ind, dtable,
        )

    def to_bytes(self) -> bytes:
        w = BitWriter()
        w.write_uint(self.n, 32)
        w.write_uint(self.instance, 64)
        self.write_payload(w)
        return w.getvalue()

    @classmethod
    def from_bytes(cls, data: bytes) -> "LabelSS2F":
        r = BitReader(data)
        n = r.read_uint(32)
        instance = r.read_uint(64)
        return cls.read_payload(r, n, instance)

    @property
    def payload_bits(self) -> int:
        w = BitWriter()
        self.write_payload(w)
        return w.bit_length


def _write_bits(w: BitWriter, bits: Sequence[bool], n: int) -> None:
    w.write_uint(len(bits), width_for(n))
    for bit in bits:
        w.write_bool(bit)


def _read_bits(r: BitReader, n: int) -> Tuple[bool, ...]:
    return tuple(r.read_bool() for _ in range(r.read_uint(width_for(n))))


def _write_opt_eid(w: BitWriter, eid: Optional[ExtendedID], n: int) -> None:
    if eid is None:
        w.write_bool(False)
    else:
        w.write_bool(True)
        write_eid(w, eid, n)


def _read_opt_eid(r: BitReader, n: int) -> Optional[ExtendedID]:
    return read_eid(r, n) if r.read_bool() else None


def _write_btable(w: BitWriter, table: Tuple[BTableEntry, ...], n: int) -> None:
    wv = width_for(max(0, n - 1))
    w.write_uint(len(table), width_for(n))
    for t in table:
        w.write_uint(t.qtop, wv)
        _write_opt_eid(w, t.b, n)
        w.write_bool(t.conn)


def _read_btable(r: BitReader, n: int) -> Tuple[BTableEntry, ...]:
    wv = width_for(max(0, n - 1))
    return tuple(
        BTableEntry(r.read_uint(wv), _read_opt_eid(r, n), r.read_bool())
        for _ in range(r.read_uint(width_for(n)))
    )


def _write_dprime(w: BitWriter, d: LabelDPrime, n: int) -> None:
    write_eid(w, d.owner, n)
    _write_opt_eid(w, d.alpha, n)
    _write_opt_eid(w, d.beta, n)
    _write_bits(w, d.bits, n)


def _read_dprime(r: BitReader, n: int) -> LabelDPrime:
    return LabelDPrime(
        read_eid(r, n), _read_opt_eid(r, n), _read_opt_eid(r, n), _read_bits(r, n)
    )


def _write_uprime(w: BitWriter, u: LabelUPrime, n: int) -> None:
    write_eid(w, u.owner, n)
    _write_opt_eid(w, u.bp, n)
    _write_opt_eid(w, u.a, n)
    w.write_bool(u.conn_a)
    _write_bits(w, u.bits, n)
    _write_opt_eid(w, u.q_heavy, n)
    _write_opt_eid(w, u.c_owner, n)
    _write_btable(w, u.btable, n)


def _read_uprime(r: BitReader, n: int) -> LabelUPrime:
    return LabelUPrime(
        read_eid(r, n),
        _read_opt_eid(r, n),
        _read_opt_eid(r, n),
        r.read_bool(),
        _read_bits(r, n),
        _read_opt_eid(r, n),
        _read_opt_eid(r, n),
        _read_btable(r, n),
    )


# ---------------------------------------------------------------------------
# encoder
# ---------------------------------------------------------------------------


class EncoderSS2F:
    """Shared-state encoder: one instance per (graph, decomposition) pair.

    Special vertices and component maps are memoized so labeling every
    vertex, or a sample of vertices, costs only what it touches.
    """

    def __init__(self, g: Graph, h: HLD, solver: Optional[Solver] = None):
        self.g = g
        self.h = h
        self.solve = _solve_default(g, solver)
        self.instance = instance_hash(g, root=h.s, scheme="ss2")
        self._ss1f_inst = instance_hash(g, root=h.s, scheme="ss1f")
        self._specials: Dict[int, tuple] = {}
        self._alpha: Dict[int, Optional[int]] = {}
        self._beta: Dict[int, Optional[int]] = {}
        self._aup: Dict[int, Optional[int]] = {}
        self._sub: Dict[int, tuple] = {}  # b -> (graph, hld, solve, ss1f instance)
        self._dp: Dict[int, LabelDPrime] = {}
        self._up: Dict[int, LabelUPrime] = {}

    # -- memoized special vertices ------------------------------------------

    def specials(self, v: int):
        if v not in self._specials:
            self._specials[v] = path_specials(self.g, self.h, v)
        return self._specials[v]

    def alpha_of(self, v: int) -> Optional[int]:
        if v not in self._alpha:
            self._alpha[v] = alpha(self.g, self.h, v, self.solve)[1]
        return self._alpha[v]

    def beta_of(self, v: int) -> Optional[int]:
        if v not in self._beta:
            self._beta[v] = beta(self.g, self.h, v, self.solve)
        return self._beta[v]

    def a_of(self, v: int) -> Optional[int]:
        if v not in self._aup:
            self._aup[v] = up_vertices(self.g, self.h, v, self.h.hp[v], self.solve)[0]
        return self._aup[v]

    def subinstance(self, b: int):
        if b not in self._sub:
            gsub = remove_vertices(self.g, (b,))
            hsub = build_hld(gsub, self.h.s)
            inst = instance_hash(gsub, root=self.h.s, scheme="ss1f")
            cache: Dict[FrozenSet[int], object] = {}

            def solve(rem: FrozenSet[int], _g=gsub, _c=cache):
                got = _c.get(rem)
                if got is None:
                    got = components(_g, rem)
                    _c[rem] = got
                return got

            self._sub[b] = (gsub, hsub, solve, inst)
        return self._sub[b]

    # -- bit strings ----------------------------------------------------------

    def conn2(self, s: int, target: int, f1: int, f2: int) -> bool:
        return bool(self.solve(frozenset((f1, f2))).connected(s, target))

    def upper_bits(self, s: int, target: int, b: int, anchor: Optional[int]):
        if anchor is None:
            return ()
        return tuple(
            self.conn2(s, target, b, w)
            for w in upper_interesting_set(self.h, anchor)
        )

    # -- restricted labels ----------------------------------------------------

    def dprime(self, v: int) -> LabelDPrime:
        if v in self._dp:
            return self._dp[v]
        g, h = self.g, self.h
        s = h.base_of(v)
        hv = h.heavy[v]
        if hv is None:
            lab = LabelDPrime(h.eid(v), None, None, ())
        else:
            al = self.alpha_of(hv)
            be = self.beta_of(hv)
            bits = self.upper_bits(s, hv, v, al)
            lab = LabelDPrime(
                h.eid(v),
                None if al is None else h.eid(al),
                None if be is None else h.eid(be),
                bits,
            )
        self._dp[v] = lab
        return lab

    def uprime(self, v: int) -> LabelUPrime:
        if v in self._up:
            return self._up[v]
        g, h = self.g, self.h
        s = h.base_of(v)
        hv = h.heavy[v]
        if hv is None:
            lab = LabelUPrime(h.eid(v), None, None, False, (), None, None, ())
        else:
            a_hv = self.a_of(hv)
            conn_a = False if a_hv is None else self.conn2(s, hv, v, a_hv)
            bits = tuple(
                self.conn2(s, hv, v, w) for w in upper_interesting_set(h, hv)
            )
            q = self.specials(hv)[2]  # q_{h(v)}: first subtree vertex on the detour
            c_own = up_vertices(g, h, v, h.hp[v], self.solve)[2]
            btable = self.btable_for(v, q)
            lab = LabelUPrime(
                h.eid(v),
                h.eid(hv),
                None if a_hv is None else h.eid(a_hv),
                conn_a,
                bits,
                None if q is None else h.eid(q),
                None if c_own is None else h.eid(c_own),
                btable,
            )
        self._up[v] = lab
        return lab

    def btable_for(self, v: int, q: Optional[int]) -> Tuple[BTableEntry, ...]:
        """b anchors of v for every heavy path meeting the root path of q."""
        if q is None:
            return ()
        g, h = self.g, self.h
        s = h.base_of(v)
        hv = h.heavy[v]
        tops = sorted({h.hp[w] for w in h.root_path(q)})
        out = []
        for qtop in tops:
            b_vq = up_vertices(g, h, v, qtop, self.solve)[1]
            conn = False
            if b_vq is not None and hv is not None:
                conn = self.conn2(s, hv, v, b_vq)
            out.append(
                BTableEntry(qtop, None if b_vq is None else h.eid(b_vq), conn)
            )
        return tuple(out)

    # -- per-vertex label -------------------------------------------------------

    def label(self, a: int) -> LabelSS2F:
        g, h = self.g, self.h
        s = h.base_of(a)
        ilist = interesting_set(h, a)

        down = []
        up = []
        side = []
        ind = []
        for bp in ilist:
            b = h.parent[bp]
            beid, bpeid = h.eid(b), h.eid(bp)

            al = self.alpha_of(bp)
            be = self.beta_of(bp)
            down.append(
                DownEntry(
                    beid,
                    bpeid,
                    None if al is None else h.eid(al),
                    None if be is None else h.eid(be),
                    self.upper_bits(s, bp, b, al),
                )
            )

            a_bp = self.a_of(bp)
            up.append(
                UpEntry(
                    beid,
                    bpeid,
                    None if a_bp is None else h.eid(a_bp),
                    False if a_bp is None else self.conn2(s, bp, b, a_bp),
                    self.upper_bits(s, bp, b, bp),
                )
            )

            gsub, hsub, subsolve, subinst = self.subinstance(b)
            ss1f_owner = _ss1f_vertex(gsub, hsub, subsolve, subinst, a)
            ss1f_bp = _ss1f_vertex(gsub, hsub, subsolve, subinst, bp)
            gmode, gv = self.specials(bp)[3]
            side.append(
                SideEntry(
                    beid,
                    bpeid,
                    ss1f_owner,
                    ss1f_bp,
                    _G_STATE[gmode],
                    None if gv is None else h.eid(gv),
                    False if gv is None else self.conn2(s, bp, b, gv),
                    None if gv is None else self.dprime(gv),
                    None if gv is None else self.uprime(gv),
                    self.upper_bits(s, bp, b, gv),
                )
            )

            ell = self.specials(bp)[0]
            ind.append(
                IndEntry(
                    beid,
                    bpeid,
                    None if ell is None else h.eid(ell),
                    self.upper_bits(s, bp, b, ell),
                )
            )

        hv = h.heavy[a]
        q = None if hv is None else self.specials(hv)[2]
        c_own = up_vertices(g, h, a, h.hp[a], self.solve)[2]
        btable = self.btable_for(a, q)

        ell_h = None if hv is None else self.specials(hv)[0]
        dtable = []
        if ell_h is not None:
            for qtop in sorted({h.hp[w] for w in h.root_path(ell_h)}):
                dv = d_vertex(g, h, a, qtop, self.solve)
                dtable.append(DTableEntry(qtop, None if dv is None else h.eid(dv)))

        return LabelSS2F(
            n=g.n,
            instance=self.instance,
            owner=h.eid(a),
            base_component=s,
            ss1f=_ss1f_vertex(g, h, self.solve, self._ss1f_inst, a),
            down=tuple(down),
            up=tuple(up),
            c_owner=None if c_own is None else h.eid(c_own),
            q_heavy=None if q is None else h.eid(q),
            btable=btable,
            dprime_self=self.dprime(a),
            uprime_self=self.uprime(a),
            side=tuple(side),
            ind=tuple(ind),
            dtable=tuple(dtable),
        )


def encode_ss2(
    g: Graph, h: HLD, solver: Optional[Solver] = None
) -> List[LabelSS2F]:
    enc = EncoderSS2F(g, h, solver)
    return [enc.label(a) for a in range(g.n)]


# ---------------------------------------------------------------------------
# decoding
# ---------------------------------------------------------------------------


def _is_anc_or_eq(a: ExtendedID, b: ExtendedID) -> bool:
    return ancestry(a, b) in (ANC_EQUAL, ANC_HEAVY, ANC_LIGHT)


def _is_strict_anc(a: ExtendedID, b: ExtendedID) -> bool:
    return ancestry(a, b) in (ANC_HEAVY, ANC_LIGHT)


def _find_entry(entries, xid: int):
    for e in entries:
        if e.b.id == xid:
            return e
    return None


def _child_entries(lt: LabelSS2F, lx: LabelSS2F):
    """(down, up, side, ind) entries for the child of x toward t."""
    xid = lx.owner.id
    for src in (lt, lx):
        for i, e in enumerate(src.down):
            if e.b.id == xid:
                return src.down[i], src.up[i], src.side[i], src.ind[i]
    raise ValueError(f"malformed labels: no child entry for fault {xid}")


def _down_core(
    alpha_eid: Optional[ExtendedID],
    bits: Tuple[bool, ...],
    beta_hy: Optional[ExtendedID],
    x_eid: ExtendedID,
    y_eid: ExtendedID,
    counters: Optional[Dict[str, int]],
    tag: str,
) -> bool:
    if alpha_eid is None:
        _bump(counters, f"{tag}:alpha_absent")
        return False
    rel = ancestry(y_eid, alpha_eid)
    if rel in (ANC_NONE, ANC_DESC):
        _bump(counters, f"{tag}:escape")
        return True
    if rel in (ANC_LIGHT, ANC_EQUAL):
        _bump(counters, f"{tag}:bits")
        return bits[y_eid.nl]
    # y is a heavy ancestor of alpha: the re-entry anchor of h(y) decides
    if beta_hy is None:
        _bump(counters, f"{tag}:beta_absent")
        return False
    if _is_strict_anc(x_eid, beta_hy):
        _bump(counters, f"{tag}:beta_between")
        return True
    _bump(counters, f"{tag}:beta_above")
    return False


def _up_core(
    bp_eid: ExtendedID,
    a_eid: Optional[ExtendedID],
    conn_a: bool,
    bits: Tuple[bool, ...],
    lower: ExtendedID,
    upper: ExtendedID,
    upper_q: Optional[ExtendedID],
    upper_btable: Tuple[BTableEntry, ...],
    lower_c: Optional[ExtendedID],
    counters: Optional[Dict[str, int]],
    tag: str,
) -> bool:
    if ancestry(upper, bp_eid) == ANC_LIGHT:
        _bump(counters, f"{tag}:bits")
        return bits[upper.nl]
    if a_eid is None:
        _bump(counters, f"{tag}:a_absent")
        return False
    if upper.id == a_eid.id:
        _bump(counters, f"{tag}:a_eq")
        return conn_a
    if _is_strict_anc(a_eid, upper):
        _bump(counters, f"{tag}:a_above")
        return True
    if upper_q is None:
        _bump(counters, f"{tag}:q_absent")
        return False
    if not _is_anc_or_eq(lower, upper_q):
        _bump(counters, f"{tag}:q_off")
        return True
    bt = None
    for t in upper_btable:
        if t.qtop == lower.heavy_path:
            bt = t
            break
    if bt is None or bt.b is None:
        _bump(counters, f"{tag}:b_absent")
        return False
    if bt.b.id == lower.id:
        _bump(counters, f"{tag}:b_eq")
        return bt.conn
    if _is_strict_anc(bt.b, lower):
        _bump(counters, f"{tag}:b_between")
        return True
    if lower_c is None:
        _bump(counters, f"{tag}:c_absent")
        return False
    if _is_strict_anc(upper, lower_c):
        _bump(counters, f"{tag}:c_between")
        return True
    _bump(counters, f"{tag}:c_above")
    return False


def decode_dprime(
    ldt: LabelDPrime,
    ldx: LabelDPrime,
    ldy: LabelDPrime,
    counters: Optional[Dict[str, int]] = None,
) -> bool:
    """Promise-restricted Down query: t,y under h(x), y off the h(x)-to-t path."""
    return _down_core(
        ldx.alpha, ldx.bits, ldy.beta, ldx.owner, ldy.owner, counters, "dprime"
    )


def decode_uprime(
    ldt: LabelUPrime,
    ldx: LabelUPrime,
    ldy: LabelUPrime,
    counters: Optional[Dict[str, int]] = None,
) -> bool:
    """Promise-restricted Up query: t under h(x), x under h(y)."""
    if ldx.bp is None:
        _bump(counters, "uprime:no_heavy")
        return False
    return _up_core(
        ldx.bp,
        ldx.a,
        ldx.conn_a,
        ldx.bits,
        ldx.owner,
        ldy.owner,
        ldy.q_heavy,
        ldy.btable,
        ldx.c_owner,
        counters,
        "uprime",
    )


def decode_ss2(
    lt: LabelSS2F,
    lx: LabelSS2F,
    ly: LabelSS2F,
    counters: Optional[Dict[str, int]] = None,
) -> bool:
    """Is the target connected to its component root once both faults fail?"""
    check_instance(lt, lx, ly)
    tid = lt.owner.id
    if tid == lx.owner.id or tid == ly.owner.id:
        return False
    if lx.owner.id == ly.owner.id:
        return decode_ss1f(lt.ss1f, lx.ss1f)
    # single-fault screens: either fault alone cutting t answers the query
    if not decode_ss1f(lt.ss1f, lx.ss1f):
        _bump(counters, "screen_x")
        return False
    if not decode_ss1f(lt.ss1f, ly.ss1f):
        _bump(counters, "screen_y")
        return False
    onx = _is_strict_anc(lx.owner, lt.owner)
    ony = _is_strict_anc(ly.owner, lt.owner)
    if not onx and not ony:
        _bump(counters, "none_on_path")
        return True
    if onx and ony:
        if _is_strict_anc(lx.owner, ly.owner):
            lx, ly = ly, lx  # deeper fault plays x
    elif ony:
        lx, ly = ly, lx

    e_down, e_up, e_side, e_ind = _child_entries(lt, lx)
    xp = e_down.bp  # child of x toward t
    x_eid, y_eid = lx.owner, ly.owner

    if _is_anc_or_eq(xp, y_eid):
        # Down: the second fault is below the child toward t
        _bump(counters, "down")
        beta_hy = None
        ey = _find_entry(ly.down, y_eid.id)
        if ey is not None:
            beta_hy = ey.beta
        return _down_core(
            e_down.alpha, e_down.bits, beta_hy, x_eid, y_eid, counters, "down"
        )

    if _is_strict_anc(y_eid, x_eid):
        # Up: the second fault sits above the first on the same root path
        _bump(counters, "up")
        return _up_core(
            e_up.bp,
            e_up.a,
            e_up.conn_a,
            e_up.bits,
            x_eid,
            y_eid,
            ly.q_heavy,
            ly.btable,
            lx.c_owner,
            counters,
            "up",
        )

    if _is_strict_anc(x_eid, y_eid):
        # Side: y hangs under another child of x
        rel = ancestry(x_eid, y_eid)
        if rel == ANC_LIGHT:
            # nested one-fault query in the graph minus x
            _bump(counters, "side_light")
            ey = _find_entry(ly.side, x_eid.id)
            if ey is None:
                _bump(counters, "side_light:malformed")
                return False
            et = _find_entry(lt.side, x_eid.id)
            if et is not None:
                return decode_ss1f(et.ss1f_owner, ey.ss1f_owner)
            ex = _find_entry(lx.side, x_eid.id)
            if ex is None:
                _bump(counters, "side_light:malformed")
                return False
            return decode_ss1f(ex.ss1f_bp, ey.ss1f_owner)
        # heavy sibling: the g anchor of the child toward t decides
        _bump(counters, "side_heavy")
        state = _G_STATE_INV[e_side.g_state]
        if state == G_NO_PATH:
            _bump(counters, "side_heavy:no_path")
            return False
        if state == G_AVOIDS:
            _bump(counters, "side_heavy:avoids")
            return True
        gv = e_side.g
        if gv.id == y_eid.id:
            _bump(counters, "side_heavy:g_eq")
            return e_side.conn_g
        rel_g = ancestry(y_eid, gv)
        if rel_g in (ANC_NONE, ANC_DESC):
            _bump(counters, "side_heavy:dprime")
            return decode_dprime(
                e_side.dprime_g, lx.dprime_self, ly.dprime_self, counters
            )
        if rel_g == ANC_LIGHT:
            _bump(counters, "side_heavy:bits")
            return e_side.bits[y_eid.nl]
        _bump(counters, "side_heavy:uprime")
        return decode_uprime(
            e_side.uprime_g, ly.uprime_self, lx.uprime_self, counters
        )

    # Independent: neither fault is an ancestor of the other
    _bump(counters, "ind")
    ell1 = e_ind.ell
    if ell1 is None:
        _bump(counters, "ind:l1_absent")
        return False
    rel1 = ancestry(y_eid, ell1)
    if rel1 in (ANC_NONE, ANC_DESC):
        _bump(counters, "ind:l1_off")
        return True
    if rel1 in (ANC_LIGHT, ANC_EQUAL):
        _bump(counters, "ind:l1_bits")
        return e_ind.bits[y_eid.nl]
    ey = _find_entry(ly.ind, y_eid.id)
    ell2 = None if ey is None else ey.ell
    if ell2 is None:
        _bump(counters, "ind:l2_absent")
        return False
    rel2 = ancestry(x_eid, ell2)
    if rel2 in (ANC_NONE, ANC_DESC):
        _bump(counters, "ind:l2_off")
        return True
    if rel2 in (ANC_LIGHT, ANC_EQUAL):
        _bump(counters, "ind:l2_bits")
        return ey.bits[x_eid.nl]
    ex = _find_entry(lx.ind, x_eid.id)
    ell3 = None if ex is None else ex.ell
    if ell3 is None:
        _bump(counters, "ind:l3_absent")
        return False
    rel3 = ancestry(y_eid, ell3)
    if rel3 in (ANC_NONE, ANC_DESC):
        _bump(counters, "ind:l3_off")
        return True
    if rel3 in (ANC_LIGHT, ANC_EQUAL):
        _bump(counters, "ind:l3_bits")
        return ex.bits[y_eid.nl]
    dx = None
    for t in lx.dtable:
        if t.qtop == y_eid.heavy_path:
            dx = t.d
            break
    dy = None
    for t in ly.dtable:
        if t.qtop == x_eid.heavy_path:
            dy = t.d
            break
    in_b_x = dx is not None and _is_strict_anc(y_eid, dx)
    in_b_y = dy is not None and _is_strict_anc(x_eid, dy)
    if in_b_x or in_b_y:
        _bump(counters, "ind:d_hit")
        return True
    _bump(counters, "ind:d_miss")
    return False
