"""Graph container, edge-list parsing, connectivity primitives, brute-force
oracle, and sparse vertex-connectivity certificates.

Vertices are 0..n-1 throughout.  Component identifiers are always the maximum
vertex id inside the component, which makes them deterministic and
order-independent.
"""

from __future__ import annotations

import math
import random
from collections import OrderedDict, deque
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple

Edge = Tuple[int, int]


class GraphFormatError(ValueError):
    """Malformed edge-list document; message carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class Graph:
    """Undirected simple graph: vertex count, canonical edge set, sorted adjacency."""

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        canon: Set[Edge] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in canon:
                raise ValueError(f"duplicate edge {e}")
            canon.add(e)
        self.n = n
        self.edges: FrozenSet[Edge] = frozenset(canon)
        lists: List[List[int]] = [[] for _ in range(n)]
        for u, v in canon:
            lists[u].append(v)
            lists[v].append(u)
        self.adj: Tuple[Tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in lists)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph) and self.n == other.n and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def load_graph(text: str) -> Graph:
    """Parse an edge-list document: first line ``n m``, then m lines ``u v``.

    ``#`` lines are comments, blank lines are skipped, CRLF is tolerated.
    All errors carry the offending 1-based line number.
    """
    header: Optional[Tuple[int, int]] = None
    edges: List[Edge] = []
    seen: Set[Edge] = set()
    last_line = 0
    for line_no, raw in enumerate(text.split("\n"), start=1):
        last_line = line_no
        line = raw.rstrip("\r").strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise GraphFormatError(line_no, f"expected header 'n m', got {line!r}")
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphFormatError(line_no, f"non-integer header field in {line!r}")
            if n < 0 or m < 0:
                raise GraphFormatError(line_no, "negative n or m in header")
            header = (n, m)
            continue
        n, m = header
        if len(edges) >= m:
            raise GraphFormatError(line_no, f"more than the declared {m} edges")
        if len(parts) != 2:
            raise GraphFormatError(line_no, f"expected edge 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(line_no, f"non-integer vertex in {line!r}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(line_no, f"vertex out of range 0..{n - 1} in {line!r}")
        if u == v:
            raise GraphFormatError(line_no, f"self-loop at vertex {u}")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise GraphFormatError(line_no, f"duplicate edge {e}")
        seen.add(e)
        edges.append(e)
    if header is None:
        raise GraphFormatError(last_line or 1, "empty document, expected 'n m' header")
    if len(edges) != header[1]:
        raise GraphFormatError(
            last_line, f"declared {header[1]} edges but found {len(edges)}"
        )
    return Graph(header[0], edges)


def dump_graph(g: Graph) -> str:
    """Inverse of load_graph, canonical ordering."""
    lines = [f"{g.n} {g.m}"]
    for u, v in sorted(g.edges):
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


class ComponentMap:
    """Partition of the vertices surviving a deletion into connected components.

    ``cid`` maps each surviving vertex to its component identifier, which by
    convention equals the maximum vertex id in the component.
    """

    __slots__ = ("cid", "removed")

    def __init__(self, cid: Dict[int, int], removed: FrozenSet[int]):
        self.cid = cid
        self.removed = removed

    def alive(self, v: int) -> bool:
        return v in self.cid

    def cid_of(self, v: int) -> Optional[int]:
        return self.cid.get(v)

    def connected(self, a: int, b: int) -> bool:
        ca = self.cid.get(a)
        return ca is not None and ca == self.cid.get(b)


def components(g: Graph, removed: Iterable[int] = ()) -> ComponentMap:
    """Connected components of G minus a vertex set, pure-Python BFS."""
    rem = frozenset(removed)
    for v in rem:
        if not (0 <= v < g.n):
            raise ValueError(f"removed vertex {v} out of range")
    cid: Dict[int, int] = {}
    seen = [False] * g.n
    for v in rem:
        seen[v] = True
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        q = deque([start])
        while q:
            a = q.popleft()
            for b in g.adj[a]:
                if not seen[b]:
                    seen[b] = True
                    comp.append(b)
                    q.append(b)
        ident = max(comp)
        for a in comp:
            cid[a] = ident
    return ComponentMap(cid, rem)


def oracle_connected(g: Graph, u: int, v: int, F: Iterable[int] = ()) -> bool:
    """Ground-truth connectivity of u and v in G minus the fault set F.

    Contract: u = v not in F is True; u or v inside F is False.  Out-of-range
    vertices are input errors, not "disconnected".
    """
    fs = frozenset(F)
    if not (0 <= u < g.n):
        raise ValueError(f"vertex {u} out of range")
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} out of range")
    for x in fs:
        if not (0 <= x < g.n):
            raise ValueError(f"fault {x} out of range")
    if u in fs or v in fs:
        return False
    if u == v:
        return True
    seen = set(fs)
    seen.add(u)
    q = deque([u])
    while q:
        a = q.popleft()
        for b in g.adj[a]:
            if b == v:
                return True
            if b not in seen:
                seen.add(b)
                q.append(b)
    return False


def sparse_certificate(g: Graph, k: int) -> Graph:
    """Union of k scan-first search forests (BFS order, ties by ascending id).

    The result has at most k*n edges and preserves every connectivity answer
    under fewer than k vertex faults: conn(u,v,G'\\F) = conn(u,v,G\\F) for all
    |F| <= k-1.
    """
    if k < 1:
        raise ValueError("certificate order must be >= 1")
    residual: List[Set[int]] = [set(a) for a in g.adj]
    keep: Set[Edge] = set()
    for _ in range(k):
        discovered = [False] * g.n
        forest: List[Edge] = []
        for root in range(g.n):
            if discovered[root]:
                continue
            discovered[root] = True
            q = deque([root])
            while q:
                a = q.popleft()
                for b in sorted(residual[a]):
                    if not discovered[b]:
                        discovered[b] = True
                        forest.append((a, b) if a < b else (b, a))
                        q.append(b)
        if not forest:
            break
        for a, b in forest:
            keep.add((a, b))
            residual[a].discard(b)
            residual[b].discard(a)
    return Graph(g.n, keep)


def remove_vertices(g: Graph, xs: Iterable[int]) -> Graph:
    """Same-n graph with the given vertices isolated (their edges dropped)."""
    rem = frozenset(xs)
    for v in rem:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} out of range")
    return Graph(g.n, (e for e in g.edges if e[0] not in rem and e[1] not in rem))


# ---------------------------------------------------------------------------
# scipy-backed component cache for encoder-side bulk queries
# ---------------------------------------------------------------------------


class _ArrayComponents:
    """Array-backed view with the same query surface as ComponentMap."""

    __slots__ = ("_labels", "_cids", "removed")

    def __init__(self, labels, cids, removed: FrozenSet[int]):
        self._labels = labels
        self._cids = cids
        self.removed = removed

    def alive(self, v: int) -> bool:
        return v not in self.removed

    def cid_of(self, v: int) -> Optional[int]:
        if v in self.removed:
            return None
        return int(self._cids[self._labels[v]])

    def connected(self, a: int, b: int) -> bool:
        if a in self.removed or b in self.removed:
            return False
        return self._labels[a] == self._labels[b]


class ConnCache:
    """Memoized component maps over vertex deletions, scipy-backed.

    Encoders issue the same deletion set many times (once per label field);
    this keeps an LRU of solved maps.  Query results are identical to
    components(); the pure-Python path stays around as the independent oracle.
    """

    def __init__(self, g: Graph, max_entries: int = 4096):
        import numpy as np

        self.g = g
        self._np = np
        if g.m:
            eu = np.fromiter((e[0] for e in sorted(g.edges)), dtype=np.int32, count=g.m)
            ev = np.fromiter((e[1] for e in sorted(g.edges)), dtype=np.int32, count=g.m)
        else:
            eu = np.zeros(0, dtype=np.int32)
            ev = np.zeros(0, dtype=np.int32)
        self._eu, self._ev = eu, ev
        self._memo: "OrderedDict[FrozenSet[int], _ArrayComponents]" = OrderedDict()
        self._max_entries = max_entries

    def solve(self, removed: Iterable[int] = ()) -> _ArrayComponents:
        key = removed if isinstance(removed, frozenset) else frozenset(removed)
        hit = self._memo.get(key)
        if hit is not None:
            self._memo.move_to_end(key)
            return hit
        np = self._np
        from scipy.sparse import coo_matrix
        from scipy.sparse.csgraph import connected_components

        n = self.g.n
        if n == 0:
            view = _ArrayComponents(np.zeros(0, dtype=np.int32), np.zeros(0), key)
        else:
            alive = np.ones(n, dtype=bool)
            if key:
                alive[list(key)] = False
            mask = alive[self._eu] & alive[self._ev]
            eu, ev = self._eu[mask], self._ev[mask]
            mat = coo_matrix(
                (np.ones(len(eu), dtype=np.int8), (eu, ev)), shape=(n, n)
            ).tocsr()
            ncomp, labels = connected_components(mat, directed=False)
            cids = np.full(ncomp, -1, dtype=np.int64)
            alive_ids = np.nonzero(alive)[0]
            np.maximum.at(cids, labels[alive_ids], alive_ids)
            view = _ArrayComponents(labels, cids, key)
        if len(self._memo) >= self._max_entries:
            self._memo.popitem(last=False)
        self._memo[key] = view
        return view


# ---------------------------------------------------------------------------
# graph families used by tests and the bench command
# ---------------------------------------------------------------------------


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def star_graph(n: int) -> Graph:
    """Center 0 joined to n-1 leaves."""
    return Graph(n, ((0, i) for i in range(1, n)))


def wheel_graph(n: int) -> Graph:
    """Hub 0 plus a cycle on 1..n-1, hub joined to every rim vertex."""
    if n < 4:
        raise ValueError("wheel needs n >= 4")
    edges = [(0, i) for i in range(1, n)]
    rim = list(range(1, n))
    edges += [(rim[i], rim[(i + 1) % len(rim)]) for i in range(len(rim))]
    return Graph(n, edges)


def grid_graph(rows: int, cols: int) -> Graph:
    def vid(r: int, c: int) -> int:
        return r * cols + c

    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < rows:
                edges.append((vid(r, c), vid(r + 1, c)))
    return Graph(rows * cols, edges)


def theta_graph(legs: Tuple[int, int, int] = (1, 2, 3)) -> Graph:
    """Two terminals joined by three internally disjoint paths.

    legs gives the number of internal vertices on each path.
    """
    n = 2 + sum(legs)
    edges = []
    nxt = 2
    for L in legs:
        prev = 0
        for _ in range(L):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Graph(n, edges)


def gnp_graph(n: int, p: float, seed: int = 0) -> Graph:
    rng = random.Random(seed)
    edges = [
        (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p
    ]
    return Graph(n, edges)


def hub_graph(n: int) -> Graph:
    """Bench family with a planted high-degree core.

    About sqrt(n)/4 hub vertices sit on a ring; every other vertex is a leaf
    tied to two cyclically adjacent hubs.  Hub degrees stay near 8*sqrt(n),
    comfortably above the f=3 degree threshold, and stay high even after
    certificate sparsification because hubs own the low vertex ids and are
    scanned first.
    """
    if n < 8:
        raise ValueError("hub family needs n >= 8")
    H = max(3, int(round(math.sqrt(n) / 4)))
    edges = [(i, (i + 1) % H) for i in range(H)]
    for leaf in range(H, n):
        a = leaf % H
        b = (a + 1) % H
        edges.append((min(a, leaf), max(a, leaf)))
        edges.append((min(b, leaf), max(b, leaf)))
    return Graph(n, edges)
