"""Single-fault labels: structure traces, oracle exhaustives, purity."""

import itertools

import pytest

from ftlabels.graphs import (
    ConnCache,
    Graph,
    components,
    cycle_graph,
    gnp_graph,
    grid_graph,
    oracle_connected,
    path_graph,
    star_graph,
    theta_graph,
)
from ftlabels.hld import build_hld, interesting_set
from ftlabels.vft1 import Label1VFT, decode_1vft, decode_source, encode_1vft
from ftlabels.wire import InstanceMismatch


def corpus():
    two_comp = Graph(
        9, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (7, 8)]
    )
    gs = [
        ("p5", path_graph(5)),
        ("c5", cycle_graph(5)),
        ("c6", cycle_graph(6)),
        ("star6", star_graph(6)),
        ("theta", theta_graph((1, 2, 3))),
        ("grid33", grid_graph(3, 3)),
        ("two_comp", two_comp),
    ]
    for seed in range(6):
        gs.append((f"gnp12s{seed}", gnp_graph(12, 0.25, seed=seed)))
    for seed in range(3):
        gs.append((f"gnp14s{seed}", gnp_graph(14, 0.35, seed=seed)))
    return gs


def test_p5_structure_trace():
    g = path_graph(5)
    labels = encode_1vft(g, build_hld(g, 0))
    assert len(labels[4].entries) == 0  # leaf of a pure heavy path
    assert len(labels[3].entries) == 1
    e = labels[3].entries[0]
    assert (e.b.id, e.bp.id) == (3, 4)
    assert e.conn_s is False and e.cid == 4


def test_star_structure_trace():
    g = star_graph(6)
    h = build_hld(g, 0)
    labels = encode_1vft(g, h)
    assert [e.bp.id for e in labels[0].entries] == [1]  # heavy child only
    assert labels[1].entries == ()  # the heavy leaf stores nothing
    for leaf in range(2, 6):
        assert [(e.b.id, e.bp.id) for e in labels[leaf].entries] == [(0, leaf)]


def test_entry_count_is_interesting_set_size():
    for name, g in corpus():
        h = build_hld(g, 0)
        labels = encode_1vft(g, h)
        for v in range(g.n):
            assert len(labels[v].entries) == len(interesting_set(h, v)), (name, v)


def test_decode_source_exhaustive():
    for name, g in corpus():
        h = build_hld(g, 0)
        labels = encode_1vft(g, h)
        for w in range(g.n):
            s = h.base_of(w)
            for x in range(g.n):
                conn, cid = decode_source(labels[w], labels[x])
                want = oracle_connected(g, s, w, {x})
                assert conn == want, (name, w, x)
                if not want and w != x:
                    assert cid == components(g, {x}).cid_of(w), (name, w, x)


def test_decode_source_p5_example():
    g = path_graph(5)
    labels = encode_1vft(g, build_hld(g, 0))
    assert decode_source(labels[4], labels[2]) == (False, 4)


def test_decode_exhaustive_oracle():
    for name, g in corpus():
        h = build_hld(g, 0)
        labels = encode_1vft(g, h)
        for u, v in itertools.combinations(range(g.n), 2):
            for x in range(g.n):
                got = decode_1vft(labels[u], labels[v], labels[x])
                want = oracle_connected(g, u, v, {x})
                assert got == want, (name, u, v, x)


def test_decode_spec_examples():
    g = cycle_graph(5)
    labels = encode_1vft(g, build_hld(g, 0))
    assert decode_1vft(labels[0], labels[3], labels[1]) is True
    g = path_graph(5)
    labels = encode_1vft(g, build_hld(g, 0))
    assert decode_1vft(labels[0], labels[4], labels[2]) is False


def test_degenerate_queries():
    g = cycle_graph(5)
    labels = encode_1vft(g, build_hld(g, 0))
    assert decode_1vft(labels[2], labels[2], labels[4]) is True
    assert decode_1vft(labels[2], labels[4], labels[4]) is False
    assert decode_1vft(labels[4], labels[2], labels[4]) is False
    assert decode_1vft(labels[4], labels[4], labels[4]) is False


def test_instance_mismatch_rejected():
    g1, g2 = cycle_graph(5), cycle_graph(6)
    l1 = encode_1vft(g1, build_hld(g1, 0))
    l2 = encode_1vft(g2, build_hld(g2, 0))
    with pytest.raises(InstanceMismatch):
        decode_1vft(l1[0], l1[1], l2[2])
    # same graph, different root is a different instance too
    l1b = encode_1vft(g1, build_hld(g1, 1))
    with pytest.raises(InstanceMismatch):
        decode_1vft(l1[0], l1[1], l1b[2])


def test_serialization_roundtrip_and_purity():
    for name, g in corpus()[:6]:
        h = build_hld(g, 0)
        labels = encode_1vft(g, h)
        revived = [Label1VFT.from_bytes(lb.to_bytes()) for lb in labels]
        assert revived == labels, name
        for u, v in itertools.combinations(range(g.n), 2):
            for x in range(g.n):
                assert decode_1vft(revived[u], revived[v], revived[x]) == decode_1vft(
                    labels[u], labels[v], labels[x]
                )


def test_bytes_deterministic_and_solver_equivalent():
    g = gnp_graph(14, 0.3, seed=9)
    h1, h2 = build_hld(g, 0), build_hld(gnp_graph(14, 0.3, seed=9), 0)
    blob1 = b"".join(lb.to_bytes() for lb in encode_1vft(g, h1))
    blob2 = b"".join(lb.to_bytes() for lb in encode_1vft(g, h2))
    assert blob1 == blob2
    cached = encode_1vft(g, h1, solver=ConnCache(g).solve)
    assert b"".join(lb.to_bytes() for lb in cached) == blob1


def test_payload_bits_reasonable():
    g = gnp_graph(64, 0.12, seed=3)
    labels = encode_1vft(g, build_hld(g, 0))
    for lb in labels:
        assert lb.payload_bits >= 1
        assert lb.payload_bits <= 40 * 6 * 6  # loose log^2 n envelope
