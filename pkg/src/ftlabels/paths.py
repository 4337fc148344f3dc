"""Weighted replacement paths and the special vertices extracted from them.

A replacement path P(a,b,F) is a minimum-weight a-b path in G minus the fault
set F under a tree-biased metric: spanning-forest edges weigh 1, every other
edge weighs n.  Any such path follows the forest whenever the forest path
between two of its vertices is fault-free, which is the structural property
the label constructions lean on.

The labels additionally consume a small zoo of extremal "special vertices"
(escape points, re-entry points, detour anchors).  Four of them (ell, f, q, g)
are defined as positions on one concrete replacement path and are extracted
from the computed path; the rest are defined by per-candidate path-existence
predicates and are evaluated directly from component decompositions.

All sources are per-component: a vertex in a component not containing the
global root is measured against its own component root (``HLD.base_of``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as _csgraph_dijkstra

from .graphs import Graph, components
from .hld import HLD

# A solver maps a frozenset of removed vertices to a ComponentMap-compatible
# view (alive / cid_of / connected).  Encoders pass ConnCache.solve here; the
# default builds a fresh pure-Python decomposition per call.
Solver = Callable[[FrozenSet[int]], object]

# vertex_g status values
G_NO_PATH = "no_path"  # source and u are disconnected once par(u) fails
G_AVOIDS = "avoids"  # the replacement path never touches T_{h(par(u))}
G_HIT = "hit"  # last touch point returned alongside


@dataclass(frozen=True)
class ReplacementPath:
    """Vertex sequence from a to b plus its total tree-biased weight."""

    vertices: Tuple[int, ...]
    weight: int

    def __len__(self) -> int:
        return len(self.vertices)


def _solver_or_default(g: Graph, solver: Optional[Solver]) -> Solver:
    if solver is not None:
        return solver
    return lambda removed: components(g, removed)


@lru_cache(maxsize=4)
def _weighted_arrays(g: Graph, h: HLD):
    """Directed-both-ways edge arrays with tree-biased weights, memoized."""
    n = g.n
    rows = np.empty(2 * g.m, dtype=np.int32)
    cols = np.empty(2 * g.m, dtype=np.int32)
    wts = np.empty(2 * g.m, dtype=np.float64)
    k = 0
    par = h.parent
    for u, v in sorted(g.edges):
        w = 1.0 if (par[v] == u or par[u] == v) else float(n)
        rows[k] = u
        cols[k] = v
        wts[k] = w
        rows[k + 1] = v
        cols[k + 1] = u
        wts[k + 1] = w
        k += 2
    return rows, cols, wts


def _is_tree_edge(h: HLD, u: int, v: int) -> bool:
    return h.parent[v] == u or h.parent[u] == v


def replacement_path(
    g: Graph, h: HLD, a: int, b: int, F: Iterable[int] = ()
) -> Optional[ReplacementPath]:
    """Minimum-weight a-b path in G minus F (tree edge=1, non-tree=n), or None.

    Distances come from Dijkstra; the concrete path is pinned by walking
    backward from b and always taking the lowest-id neighbor whose distance is
    tight, which matches a lowest-id-predecessor relaxation rule.
    """
    fs = frozenset(F)
    for x in (a, b):
        if not (0 <= x < g.n):
            raise ValueError(f"vertex {x} out of range")
    if a in fs or b in fs:
        raise ValueError("replacement path endpoints must not be faulty")
    if a == b:
        return ReplacementPath((a,), 0)
    if g.m == 0:
        return None
    n = g.n
    rows, cols, wts = _weighted_arrays(g, h)
    if fs:
        alive = np.ones(n, dtype=bool)
        alive[list(fs)] = False
        mask = alive[rows] & alive[cols]
        mat = csr_matrix((wts[mask], (rows[mask], cols[mask])), shape=(n, n))
    else:
        mat = csr_matrix((wts, (rows, cols)), shape=(n, n))
    dist = _csgraph_dijkstra(mat, directed=True, indices=a)
    if not np.isfinite(dist[b]):
        return None
    # All weights are integers well below 2**53, so float equality is exact.
    path = [b]
    cur = b
    nf = float(n)
    while cur != a:
        dcur = dist[cur]
        nxt = None
        for w in g.adj[cur]:  # ascending id: first tight neighbor is lowest
            if w in fs:
                continue
            step = 1.0 if _is_tree_edge(h, cur, w) else nf
            if dist[w] + step == dcur:
                nxt = w
                break
        if nxt is None:  # pragma: no cover - dist table guarantees a predecessor
            raise AssertionError("broken distance table during reconstruction")
        path.append(nxt)
        cur = nxt
    path.reverse()
    return ReplacementPath(tuple(path), int(dist[b]))


# ---------------------------------------------------------------------------
# special vertices read off one replacement path
# ---------------------------------------------------------------------------


def _require_non_root(h: HLD, u: int) -> int:
    p = h.parent[u]
    if p is None:
        raise ValueError(f"vertex {u} is a root; no parent to fail")
    return p


def vertex_ell(g: Graph, h: HLD, u: int) -> Optional[int]:
    """Last vertex of P(s,u,{par(u)}) outside T_{par(u)}; None if no path."""
    return path_specials(g, h, u)[0]


def vertex_f(g: Graph, h: HLD, u: int) -> Optional[int]:
    """First vertex of P(u,s,{par(u)}) inside T[s,par(u)); None if no path."""
    return path_specials(g, h, u)[1]


def vertex_q(g: Graph, h: HLD, u: int) -> Optional[int]:
    """First vertex of P(s,u,{par(u)}) inside T_u; None if no path."""
    return path_specials(g, h, u)[2]


def vertex_g(g: Graph, h: HLD, u: int) -> Tuple[str, Optional[int]]:
    """Last vertex of P(s,u,{par(u)}) inside T_{h(par(u))}, three-state.

    Returns (G_HIT, v) when the path meets the heavy sibling subtree last at
    v, (G_AVOIDS, None) when the path exists but never touches it, and
    (G_NO_PATH, None) when s and u are disconnected once par(u) fails.
    """
    return path_specials(g, h, u)[3]


def path_specials(
    g: Graph, h: HLD, u: int
) -> Tuple[Optional[int], Optional[int], Optional[int], Tuple[str, Optional[int]]]:
    """(ell_u, f_u, q_u, g_u) in one shot, sharing the two Dijkstra runs."""
    p = _require_non_root(h, u)
    s = h.base_of(u)
    if p == s:
        # the failed parent is the source itself: no replacement path exists
        return None, None, None, (G_NO_PATH, None)
    fault = frozenset((p,))
    rp_su = replacement_path(g, h, s, u, fault)
    if rp_su is None:
        return None, None, None, (G_NO_PATH, None)
    rp_us = replacement_path(g, h, u, s, fault)
    assert rp_us is not None  # same graph, same endpoints

    ell = None
    for v in reversed(rp_su.vertices):
        if not h.anc_or_eq(p, v):
            ell = v
            break

    f = None
    for v in rp_us.vertices:
        if v != p and h.anc_or_eq(v, p):
            f = v
            break

    q = None
    for v in rp_su.vertices:
        if h.anc_or_eq(u, v):
            q = v
            break

    hp_child = h.heavy[p]
    assert hp_child is not None  # p has at least the child u
    gstat: Tuple[str, Optional[int]] = (G_AVOIDS, None)
    for v in reversed(rp_su.vertices):
        if h.anc_or_eq(hp_child, v):
            gstat = (G_HIT, v)
            break
    return ell, f, q, gstat


# ---------------------------------------------------------------------------
# special vertices defined by per-candidate path-existence predicates
# ---------------------------------------------------------------------------


def _reachable_candidates(
    g: Graph,
    comps,
    removed: FrozenSet[int],
    src: int,
    cands: Sequence[int],
) -> List[int]:
    """Candidates v with an src-v path internally avoiding ``removed``.

    Endpoints are exempt: src and v may themselves lie in the removed set,
    only interior vertices must avoid it.  Preserves candidate order.
    """
    if src in removed:
        src_cids = {comps.cid_of(w) for w in g.adj[src] if w not in removed}
    else:
        src_cids = {comps.cid_of(src)}
    out: List[int] = []
    for v in cands:
        if v == src:  # the empty path avoids everything
            out.append(v)
            continue
        if g.has_edge(src, v):
            out.append(v)
            continue
        for w in g.adj[v]:
            if w not in removed and comps.cid_of(w) in src_cids:
                out.append(v)
                break
    return out


def alpha(
    g: Graph, h: HLD, u: int, solver: Optional[Solver] = None
) -> Tuple[List[int], Optional[int]]:
    """(A_u, alpha_u): subtree vertices that can reach the source once all of
    T_u+ except themselves fails, and their LCA (None when the set is empty)."""
    p = _require_non_root(h, u)
    solve = _solver_or_default(g, solver)
    s = h.base_of(u)
    sub = list(h.subtree(u))
    t_plus = frozenset(sub) | {p}
    if s in t_plus:
        return [], None
    comps = solve(t_plus)
    scid = comps.cid_of(s)
    found: List[int] = []
    for v in sub:
        for w in g.adj[v]:
            if w not in t_plus and comps.cid_of(w) == scid:
                found.append(v)
                break
    found.sort()
    if not found:
        return [], None
    return found, h.lca_set(found)


def _root_path_candidates(
    g: Graph, h: HLD, u: int, solve: Solver
) -> List[int]:
    """Vertices v on T[s,par(u)) with a u-v path internally avoiding T[s,par(u)],
    in root-to-leaf order."""
    p = h.parent[u]
    assert p is not None
    rpath = h.root_path(p)  # s .. par(u)
    cands = rpath[:-1]  # T[s, par(u))
    if not cands:
        return []
    removed = frozenset(rpath)
    comps = solve(removed)
    return _reachable_candidates(g, comps, removed, u, cands)


def beta(g: Graph, h: HLD, u: int, solver: Optional[Solver] = None) -> Optional[int]:
    """Deepest v on T[s,par(u)) reconnectable to u below the cut, or None."""
    _require_non_root(h, u)
    qual = _root_path_candidates(g, h, u, _solver_or_default(g, solver))
    return qual[-1] if qual else None


def up_vertices(
    g: Graph, h: HLD, u: int, qtop: int, solver: Optional[Solver] = None
) -> Tuple[Optional[int], Optional[int], Optional[int]]:
    """(a_u, b_{u,Q}, c_{u,Q}) for the heavy path Q identified by its top.

    a_u: highest v on T[s,par(u)) with a v-u path internally avoiding
    T[s,par(u)] (independent of Q; None for roots).
    b_{u,Q}: highest v strictly below u on the root-to-leaf extension of Q
    with an s-v path internally avoiding the u-to-leaf segment.
    c_{u,Q}: lowest v strictly above u on the root path with a path from u's
    successor along Q that internally avoids T[s,u].
    Each is None when u is outside the extension of Q or nothing qualifies.
    """
    solve = _solver_or_default(g, solver)
    s = h.base_of(u)

    a_u: Optional[int] = None
    if h.parent[u] is not None:
        qual = _root_path_candidates(g, h, u, solve)
        a_u = qual[0] if qual else None

    leaf = h.hp_leaf.get(qtop)
    if leaf is None:
        raise ValueError(f"vertex {qtop} is not the top of a heavy path")
    on_extension = h.base_of(qtop) == s and h.anc_or_eq(u, leaf)

    b_uq: Optional[int] = None
    if on_extension:
        seg = h.tree_path(u, leaf)  # u .. leaf
        cands = seg[1:]  # strictly below u
        if cands:
            removed = frozenset(seg)
            comps = solve(removed)
            qual = _reachable_candidates(g, comps, removed, s, cands)
            b_uq = qual[0] if qual else None

    c_uq: Optional[int] = None
    if on_extension and u != leaf:
        succ = h.child_on_path(u, leaf)
        rpath = h.root_path(u)  # s .. u
        cands = rpath[:-1]  # T[s, u)
        if cands:
            removed = frozenset(rpath)
            comps = solve(removed)
            qual = _reachable_candidates(g, comps, removed, succ, cands)
            c_uq = qual[-1] if qual else None

    return a_u, b_uq, c_uq


def d_vertex(
    g: Graph, h: HLD, u: int, qtop: int, solver: Optional[Solver] = None
) -> Optional[int]:
    """Lowest v on the heavy path Q with an s-v path internally avoiding
    {u} plus the part of Q not strictly above u; None if nothing qualifies."""
    solve = _solver_or_default(g, solver)
    leaf = h.hp_leaf.get(qtop)
    if leaf is None:
        raise ValueError(f"vertex {qtop} is not the top of a heavy path")
    s = h.base_of(u)
    if h.base_of(qtop) != s:
        return None
    qverts = h.tree_path(qtop, leaf)  # the heavy path itself, top to leaf
    removed = frozenset(
        [u] + [q for q in qverts if not (q != u and h.anc_or_eq(q, u))]
    )
    comps = solve(removed)
    qual = _reachable_candidates(g, comps, removed, s, qverts)
    return qual[-1] if qual else None


def analog_set(
    g: Graph, h: HLD, a: int, b: int, solver: Optional[Solver] = None
) -> List[int]:
    """Up to two lowest-id vertices of T_{h(b)} reachable from a while all of
    T_{h(b)}+ except the target itself is failed.

    Requires b to be a strict ancestor of a.  When a itself lies inside
    T_{h(b)} only a qualifies (via the empty path); when b has no heavy child
    the set is empty.
    """
    if a == b or not h.anc_or_eq(b, a):
        raise ValueError("analog sets need b to be a strict ancestor of a")
    hb = h.heavy[b]
    if hb is None:
        return []
    sub = list(h.subtree(hb))
    t_plus = frozenset(sub) | {b}
    if a in t_plus:
        return [a]
    solve = _solver_or_default(g, solver)
    comps = solve(t_plus)
    acid = comps.cid_of(a)
    out: List[int] = []
    for c in sorted(sub):
        if g.has_edge(a, c):
            out.append(c)
        else:
            for w in g.adj[c]:
                if w not in t_plus and comps.cid_of(w) == acid:
                    out.append(c)
                    break
        if len(out) == 2:
            break
    return out
