import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from grassauto.clique import (
    bitsets_from_packed,
    degeneracy_order,
    find_clique,
    is_clique,
    pack_bitsets,
)

from oracles import max_clique_networkx


def random_graph(n, density, seed):
    rng = random.Random(seed)
    adj = [0] * n
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < density:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
                edges.append((u, v))
    return adj, edges


@settings(max_examples=40)
@given(st.integers(1, 45), st.floats(0.05, 0.9), st.integers(0, 10**6))
def test_maximum_matches_networkx(n, density, seed):
    adj, edges = random_graph(n, density, seed)
    res = find_clique(adj)
    assert res.exhaustive and not res.timed_out
    assert len(res.clique) == max_clique_networkx(n, edges)
    assert is_clique(adj, res.clique)


@settings(max_examples=30)
@given(st.integers(5, 40), st.floats(0.2, 0.8), st.integers(0, 10**6), st.integers(1, 8))
def test_target_mode(n, density, seed, target):
    adj, edges = random_graph(n, density, seed)
    omega = max_clique_networkx(n, edges)
    res = find_clique(adj, target=target)
    assert res.reached_target == (omega >= target)
    if res.reached_target:
        assert len(res.clique) == target and is_clique(adj, res.clique)
    else:
        assert res.exhaustive


def test_packed_input_and_roundtrip():
    adj, _ = random_graph(70, 0.4, 3)
    packed = pack_bitsets(adj)
    assert bitsets_from_packed(packed) == adj
    order = list(range(70))
    random.Random(0).shuffle(order)
    relabelled = bitsets_from_packed(packed, order)
    for i, v in enumerate(order):
        for j, u in enumerate(order):
            assert (relabelled[i] >> j & 1) == (adj[v] >> u & 1)
    assert find_clique(packed).clique == find_clique(adj).clique


def test_degeneracy_order():
    adj, _ = random_graph(60, 0.3, 9)
    order = degeneracy_order(pack_bitsets(adj))
    assert sorted(order) == list(range(60))
    # smallest-last: each vertex has minimum degree among itself and everything placed before it
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        earlier = [u for u in order[: pos[v] + 1]]
        mask = sum(1 << u for u in earlier)
        deg = lambda x: bin(adj[x] & mask).count("1")
        assert deg(v) == min(deg(u) for u in earlier)


def test_seeded_runs_reproducible():
    adj, _ = random_graph(80, 0.5, 11)
    a = find_clique(adj, target=6, seed=42, restart_seconds=1.0)
    b = find_clique(adj, target=6, seed=42, restart_seconds=1.0)
    assert a.clique == b.clique and a.seed == 42


def test_node_cap_times_out():
    adj, _ = random_graph(120, 0.9, 1)
    res = find_clique(adj, max_nodes=10)
    assert res.timed_out and not res.exhaustive
    assert is_clique(adj, res.clique)


def test_budget_respected():
    adj, _ = random_graph(300, 0.9, 2)
    res = find_clique(adj, budget_seconds=0.3)
    assert res.timed_out and not res.exhaustive
    assert res.seconds < 5 and is_clique(adj, res.clique)


def test_empty_and_self_loop():
    res = find_clique([])
    assert res.clique == [] and res.exhaustive
    with pytest.raises(ValueError):
        find_clique([0b1])
    packed = np.zeros((3, 1), dtype=np.uint8)
    assert len(find_clique(packed).clique) == 1
