"""Rooted BFS spanning forest with heavy-light annotations.

Everything downstream (interesting sets, ancestry tests, extended ids, heavy
paths) lives here.  DFS entry/exit numbers are assigned by one pass over all
components (roots in ascending id order), so interval containment is globally
meaningful and cross-component ancestry tests come out "none" for free.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .graphs import Graph

ANC_NONE = "none"
ANC_HEAVY = "ancestor-heavy"
ANC_LIGHT = "ancestor-light"
ANC_DESC = "descendant"
ANC_EQUAL = "equal"


@dataclass(frozen=True)
class ExtendedID:
    """Self-contained vertex identity: from two of these one can classify
    ancestry (including heavy vs light) with no other data."""

    id: int
    tin: int
    tout: int
    heavy_child_id: Optional[int]
    heavy_child_tin: Optional[int]
    heavy_child_tout: Optional[int]
    nl: int
    heavy_path: int

    def contains(self, other: "ExtendedID") -> bool:
        return self.tin <= other.tin < self.tout


def ancestry(e1: ExtendedID, e2: ExtendedID) -> str:
    """Classify e1 relative to e2: equal / ancestor-heavy / ancestor-light /
    descendant / none.  "ancestor-heavy" means the child of e1 on the tree
    path toward e2 is e1's heavy child."""
    if e1.id == e2.id:
        return ANC_EQUAL
    if e1.contains(e2):
        if (
            e1.heavy_child_tin is not None
            and e1.heavy_child_tin <= e2.tin < e1.heavy_child_tout
        ):
            return ANC_HEAVY
        return ANC_LIGHT
    if e2.contains(e1):
        return ANC_DESC
    return ANC_NONE


class HLD:
    """Heavy-light decomposition of the BFS spanning forest."""

    def __init__(self, g: Graph, s: int):
        if not (0 <= s < g.n):
            raise ValueError(f"root {s} out of range")
        n = g.n
        self.g = g
        self.root = s
        parent: List[Optional[int]] = [None] * n
        depth = [0] * n
        comp_root = [-1] * n
        bfs_order: List[int] = []

        def bfs(r: int) -> None:
            comp_root[r] = r
            parent[r] = None
            depth[r] = 0
            q = deque([r])
            while q:
                a = q.popleft()
                bfs_order.append(a)
                for b in g.adj[a]:
                    if comp_root[b] == -1:
                        comp_root[b] = r
                        parent[b] = a
                        depth[b] = depth[a] + 1
                        q.append(b)

        bfs(s)
        for v in range(n):
            if comp_root[v] == -1:
                bfs(v)

        children: List[List[int]] = [[] for _ in range(n)]
        for v in range(n):
            p = parent[v]
            if p is not None:
                children[p].append(v)
        for v in range(n):
            children[v].sort()

        size = [1] * n
        for v in reversed(bfs_order):
            p = parent[v]
            if p is not None:
                size[p] += size[v]

        heavy: List[Optional[int]] = [None] * n
        for v in range(n):
            best = None
            best_size = -1
            for c in children[v]:
                if size[c] > best_size:
                    best = c
                    best_size = size[c]
            heavy[v] = best

        nl = [0] * n
        hp = [0] * n
        for v in bfs_order:
            p = parent[v]
            if p is None:
                nl[v] = 0
                hp[v] = v
            elif heavy[p] == v:
                nl[v] = nl[p]
                hp[v] = hp[p]
            else:
                nl[v] = nl[p] + 1
                hp[v] = v

        tin = [0] * n
        tout = [0] * n
        counter = 0
        self.roots = sorted(r for r in range(n) if parent[r] is None)
        for r in self.roots:
            stack: List[Tuple[int, bool]] = [(r, False)]
            while stack:
                v, done = stack.pop()
                if done:
                    tout[v] = counter
                    continue
                tin[v] = counter
                counter += 1
                stack.append((v, True))
                kids = children[v]
                h = heavy[v]
                ordered = ([h] + [c for c in kids if c != h]) if h is not None else kids
                for c in reversed(ordered):
                    stack.append((c, False))

        hp_leaf: Dict[int, int] = {}
        for v in range(n):
            if hp[v] == v:
                t = v
                while heavy[t] is not None:
                    t = heavy[t]
                hp_leaf[v] = t

        order = [0] * n
        for v in range(n):
            order[tin[v]] = v

        self.s = s
        self.parent = parent
        self.depth = depth
        self.children = children
        self.size = size
        self.heavy = heavy
        self.nl = nl
        self.hp = hp
        self.hp_leaf = hp_leaf
        self.tin = tin
        self.tout = tout
        self.order = order
        self.comp_root = comp_root

    # -- basic relations ------------------------------------------------------

    def base_of(self, v: int) -> int:
        """Root id of v's component (the base-component identifier)."""
        return self.comp_root[v]

    def anc_or_eq(self, a: int, b: int) -> bool:
        """a is b or an ancestor of b."""
        return self.tin[a] <= self.tin[b] < self.tout[a]

    def is_light(self, v: int) -> bool:
        p = self.parent[v]
        return p is not None and self.heavy[p] != v

    def is_heavy(self, v: int) -> bool:
        p = self.parent[v]
        return p is not None and self.heavy[p] == v

    def eid(self, v: int) -> ExtendedID:
        h = self.heavy[v]
        return ExtendedID(
            id=v,
            tin=self.tin[v],
            tout=self.tout[v],
            heavy_child_id=h,
            heavy_child_tin=None if h is None else self.tin[h],
            heavy_child_tout=None if h is None else self.tout[h],
            nl=self.nl[v],
            heavy_path=self.hp[v],
        )

    # -- paths and subtrees ---------------------------------------------------

    def root_path(self, v: int) -> List[int]:
        """T[s,v]: the tree path from v's component root down to v."""
        out = []
        cur: Optional[int] = v
        while cur is not None:
            out.append(cur)
            cur = self.parent[cur]
        out.reverse()
        return out

    def tree_path(self, a: int, b: int) -> List[int]:
        """T[a,b] for a an ancestor-or-equal of b."""
        if not self.anc_or_eq(a, b):
            raise ValueError(f"{a} is not an ancestor of {b}")
        out = []
        cur = b
        while cur != a:
            out.append(cur)
            cur = self.parent[cur]  # type: ignore[assignment]
        out.append(a)
        out.reverse()
        return out

    def subtree(self, v: int) -> Sequence[int]:
        """Vertices of T_v (contiguous in DFS order)."""
        return self.order[self.tin[v] : self.tout[v]]

    def child_on_path(self, a: int, b: int) -> int:
        """The child of a on T[a,b]; a must be a strict ancestor of b."""
        if a == b or not self.anc_or_eq(a, b):
            raise ValueError(f"{a} is not a strict ancestor of {b}")
        h = self.heavy[a]
        if h is not None and self.anc_or_eq(h, b):
            return h
        for c in self.children[a]:
            if self.anc_or_eq(c, b):
                return c
        raise AssertionError("unreachable: ancestor without a child on the path")

    def lca(self, a: int, b: int) -> int:
        if self.comp_root[a] != self.comp_root[b]:
            raise ValueError(f"{a} and {b} are in different components")
        while not self.anc_or_eq(a, b):
            a = self.parent[a]  # type: ignore[assignment]
        return a

    def lca_set(self, vs: Sequence[int]) -> int:
        it = iter(vs)
        acc = next(it)
        for v in it:
            acc = self.lca(acc, v)
        return acc


def build_hld(g: Graph, s: int) -> HLD:
    """BFS spanning forest rooted at s (other components at their min id),
    annotated with the full heavy-light decomposition."""
    return HLD(g, s)


def interesting_set(h: HLD, a: int) -> List[int]:
    """I(a): light vertices on T[s,a] plus h(a), in depth order."""
    out = [v for v in h.root_path(a) if h.is_light(v)]
    if h.heavy[a] is not None:
        out.append(h.heavy[a])
    return out


def upper_interesting_set(h: HLD, a: int) -> List[int]:
    """I^(a) = {par(b) : b in I(a)} + {a}, depth order, duplicates removed."""
    out = []
    for b in interesting_set(h, a):
        p = h.parent[b]
        if p is not None and p != a and p not in out:
            out.append(p)
    out.sort(key=lambda v: h.depth[v])
    out.append(a)
    return out
