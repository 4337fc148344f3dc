"""Tests for the heavy-light decomposition over the BFS spanning forest.

Oracles used here are independent of the module: parent-chain walks for
ancestry, explicit path scans for light counts, and brute subtree collection.
"""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ftlabels.graphs import (
    Graph,
    cycle_graph,
    gnp_graph,
    grid_graph,
    path_graph,
    star_graph,
)
from ftlabels.hld import (
    ANC_DESC,
    ANC_EQUAL,
    ANC_HEAVY,
    ANC_LIGHT,
    ANC_NONE,
    build_hld,
    interesting_set,
    upper_interesting_set,
)


def chain_to_root(h, v):
    out = []
    cur = v
    while cur is not None:
        out.append(cur)
        cur = h.parent[cur]
    return out


def oracle_ancestry(h, a, b):
    """Classify by walking parent chains only."""
    if a == b:
        return ANC_EQUAL
    chain_b = chain_to_root(h, b)
    if a in chain_b:
        child = chain_b[chain_b.index(a) - 1]
        return ANC_HEAVY if h.heavy[a] == child else ANC_LIGHT
    if b in chain_to_root(h, a):
        return ANC_DESC
    return ANC_NONE


def sample_graphs():
    gs = [
        path_graph(5),
        star_graph(5),
        cycle_graph(6),
        grid_graph(3, 4),
        Graph(7, [(0, 1), (1, 2), (4, 5), (5, 6), (4, 6)]),  # two components + isolate
    ]
    for seed in range(4):
        gs.append(gnp_graph(12, 0.25, seed=seed))
    gs.append(gnp_graph(50, 0.1, seed=7))
    return gs


# ---------------------------------------------------------------- structure


def test_path_graph_all_heavy():
    h = build_hld(path_graph(5), 0)
    assert h.parent == [None, 0, 1, 2, 3]
    for v in range(4):
        assert h.heavy[v] == v + 1
    assert h.nl == [0, 0, 0, 0, 0]
    assert interesting_set(h, 4) == []
    assert interesting_set(h, 3) == [4]
    assert h.hp == [0, 0, 0, 0, 0]
    assert h.hp_leaf[0] == 4


def test_star_heavy_child_is_lowest_leaf():
    h = build_hld(star_graph(5), 0)
    assert h.heavy[0] == 1
    for leaf in (2, 3, 4):
        assert h.is_light(leaf)
    assert h.nl[1] == 0 and h.nl[2] == 1
    assert interesting_set(h, 0) == [1]
    # leaves: I(leaf) = lights on the path (the leaf itself if light)
    assert interesting_set(h, 2) == [2]
    assert interesting_set(h, 1) == []


def test_bfs_tree_ties_ascending():
    # 0-1, 0-2, 1-3, 2-3: BFS from 0 discovers 3 via 1 (lower id first)
    h = build_hld(Graph(4, [(0, 1), (0, 2), (1, 3), (2, 3)]), 0)
    assert h.parent[3] == 1
    assert h.depth == [0, 1, 1, 2]


def test_multi_component_roots_and_bases():
    g = Graph(7, [(0, 1), (1, 2), (4, 5), (5, 6), (4, 6)])
    h = build_hld(g, 0)
    assert h.roots == [0, 3, 4]
    assert h.base_of(2) == 0 and h.base_of(3) == 3 and h.base_of(6) == 4
    # intervals are globally disjoint across components
    e2, e5 = h.eid(2), h.eid(5)
    assert ancestry_none(h, 2, 5)


def ancestry_none(h, a, b):
    from ftlabels.hld import ancestry

    return ancestry(h.eid(a), h.eid(b)) == ANC_NONE


def test_nonroot_vertices_partition_heavy_light():
    for g in sample_graphs():
        h = build_hld(g, 0)
        for v in range(g.n):
            if h.parent[v] is None:
                assert not h.is_light(v) and not h.is_heavy(v)
            else:
                assert h.is_light(v) != h.is_heavy(v)


def test_heavy_child_maximizes_subtree_ties_low_id():
    for g in sample_graphs():
        h = build_hld(g, 0)
        for v in range(g.n):
            kids = h.children[v]
            if not kids:
                assert h.heavy[v] is None
                continue
            best = max(h.size[c] for c in kids)
            winners = [c for c in kids if h.size[c] == best]
            assert h.heavy[v] == min(winners)


def test_nl_counts_lights_on_root_path():
    for g in sample_graphs():
        h = build_hld(g, 0)
        for v in range(g.n):
            lights = sum(1 for w in h.root_path(v) if h.is_light(w))
            assert h.nl[v] == lights


def test_light_count_logarithmic_bound():
    g = gnp_graph(50, 0.1, seed=7)
    h = build_hld(g, 0)
    bound = math.floor(math.log2(50))
    assert max(h.nl) <= bound
    for g in sample_graphs():
        h = build_hld(g, 0)
        assert max(h.nl) <= math.floor(math.log2(max(2, g.n)))


def test_heavy_paths_partition_vertices():
    for g in sample_graphs():
        h = build_hld(g, 0)
        tops = [v for v in range(g.n) if h.hp[v] == v]
        seen = set()
        for t in tops:
            cur = t
            while True:
                assert cur not in seen
                seen.add(cur)
                assert h.hp[cur] == t
                if h.heavy[cur] is None:
                    assert h.hp_leaf[t] == cur
                    break
                cur = h.heavy[cur]
        assert seen == set(range(g.n))


# ---------------------------------------------------------------- intervals


def test_intervals_match_parent_chain():
    for g in sample_graphs():
        h = build_hld(g, 0)
        for a in range(g.n):
            for b in range(g.n):
                in_chain = a in chain_to_root(h, b)
                assert h.anc_or_eq(a, b) == in_chain


def test_subtree_slice_matches_descendants():
    for g in sample_graphs():
        h = build_hld(g, 0)
        for v in range(g.n):
            want = {b for b in range(g.n) if h.anc_or_eq(v, b)}
            assert set(h.subtree(v)) == want
            assert len(h.subtree(v)) == h.size[v]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_ancestry_from_eids_only(seed):
    rng = random.Random(seed)
    n = rng.randrange(2, 40)
    g = gnp_graph(n, rng.choice([0.05, 0.15, 0.4]), seed=seed)
    h = build_hld(g, 0)
    from ftlabels.hld import ancestry

    for a in range(n):
        for b in range(n):
            assert ancestry(h.eid(a), h.eid(b)) == oracle_ancestry(h, a, b)


def test_ancestry_eids_larger_tree():
    g = gnp_graph(200, 0.02, seed=3)
    h = build_hld(g, 0)
    from ftlabels.hld import ancestry

    rng = random.Random(0)
    for _ in range(4000):
        a, b = rng.randrange(200), rng.randrange(200)
        assert ancestry(h.eid(a), h.eid(b)) == oracle_ancestry(h, a, b)


# ---------------------------------------------------------------- operations


def test_child_on_path_matches_chain_walk():
    for g in sample_graphs():
        h = build_hld(g, 0)
        for b in range(g.n):
            chain = chain_to_root(h, b)
            for i, a in enumerate(chain[1:], start=1):
                assert h.child_on_path(a, b) == chain[i - 1]


def test_child_on_path_requires_strict_ancestor():
    h = build_hld(path_graph(4), 0)
    with pytest.raises(ValueError):
        h.child_on_path(2, 2)
    with pytest.raises(ValueError):
        h.child_on_path(3, 1)


def test_child_on_path_lands_in_interesting_sets():
    # the child of a toward b is either a's heavy child or a light vertex,
    # so it always shows up in I(a) or as a light member of I(b)
    for g in sample_graphs():
        h = build_hld(g, 0)
        for b in range(g.n):
            for a in chain_to_root(h, b)[1:]:
                c = h.child_on_path(a, b)
                assert c in set(interesting_set(h, a)) | set(interesting_set(h, b))


def test_lca_matches_chain_intersection():
    for g in sample_graphs():
        h = build_hld(g, 0)
        for a in range(g.n):
            ca = chain_to_root(h, a)
            for b in range(g.n):
                if h.comp_root[a] != h.comp_root[b]:
                    with pytest.raises(ValueError):
                        h.lca(a, b)
                    continue
                cb = set(chain_to_root(h, b))
                want = next(v for v in ca if v in cb)
                assert h.lca(a, b) == want


def test_interesting_set_contents_and_order():
    for g in sample_graphs():
        h = build_hld(g, 0)
        for a in range(g.n):
            got = interesting_set(h, a)
            lights = [v for v in h.root_path(a) if h.is_light(v)]
            want = lights + ([h.heavy[a]] if h.heavy[a] is not None else [])
            assert got == want
            assert got == sorted(got, key=lambda v: h.depth[v])
            assert len(got) <= math.floor(math.log2(max(2, g.n))) + 1


def test_upper_interesting_set_definition():
    for g in sample_graphs():
        h = build_hld(g, 0)
        for a in range(g.n):
            got = upper_interesting_set(h, a)
            want = {h.parent[b] for b in interesting_set(h, a)} | {a}
            want.discard(None)
            assert set(got) == want
            assert got == sorted(got, key=lambda v: h.depth[v])
            assert got[-1] == a
            # positions: member with j lights above-or-at it sits at index j
            for idx, y in enumerate(got):
                assert h.nl[y] == idx
            assert len(got) == h.nl[a] + 1


def test_deterministic_rebuild():
    g = gnp_graph(30, 0.2, seed=5)
    h1, h2 = build_hld(g, 0), build_hld(g, 0)
    assert h1.tin == h2.tin and h1.tout == h2.tout
    assert h1.heavy == h2.heavy and h1.hp == h2.hp
