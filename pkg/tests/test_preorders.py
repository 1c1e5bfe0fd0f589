import numpy as np
import pytest

from morseclust.graph import Graph, PseudoDistance, complete_graph, scale
from morseclust.preorders import (
    EQUIVALENT,
    GREATER,
    INCOMPARABLE,
    LESS,
    GapVertexOrder,
    MorseInstance,
    audit_edge_preorder,
    audit_vertex_preorder,
    common_neighbor_weights,
    delta_preorders,
    k_preorders,
    parse_instance,
    sir_preorders,
    unsupervised_preorders,
)


def _random_distance(n, rng, graph=None):
    g = graph or complete_graph(n)
    return PseudoDistance(g, {e: float(rng.uniform(0.1, 3.0)) for e in sorted(g.edges)})


def _maximal_edges(pe, v, nbrs):
    out = []
    for w in nbrs:
        if all(t == w or pe.cmp(v, w, t) != LESS for t in nbrs):
            out.append(w)
    return out


def test_sir_vertex_order_examples():
    d = _random_distance(6, np.random.default_rng(0))
    pv, _ = sir_preorders(d)
    assert pv.cmp(2, 5) == LESS
    assert pv.cmp(5, 2) == GREATER
    assert pv.cmp(3, 3) == EQUIVALENT


def test_sir_edge_order_examples():
    g = Graph(3, [(1, 2), (1, 3)])
    d = PseudoDistance(g, {(1, 2): 3.0, (1, 3): 1.0})
    _, pe = sir_preorders(d)
    # further edge is smaller in the preorder
    assert pe.cmp(1, 2, 3) == LESS
    d2 = PseudoDistance(g, {(1, 2): 1.0, (1, 3): 1.0})
    _, pe2 = sir_preorders(d2)
    assert pe2.cmp(1, 2, 3) == EQUIVALENT


def test_sir_edge_order_scale_invariant():
    rng = np.random.default_rng(1)
    d = _random_distance(7, rng)
    _, pe = sir_preorders(d)
    for alpha in (0.1, 3.0, 1000.0):
        _, pe_s = sir_preorders(scale(d, alpha))
        for v in range(1, 8):
            for w in range(1, 8):
                for t in range(1, 8):
                    if len({v, w, t}) == 3:
                        assert pe.cmp(v, w, t) == pe_s.cmp(v, w, t)


def test_gap_vertex_order_examples():
    pv = GapVertexOrder(2)
    assert pv.cmp(1, 4) == LESS  # gap 3 >= 2
    assert pv.cmp(1, 3) == LESS  # gap exactly k
    assert pv.cmp(1, 2) == INCOMPARABLE
    assert pv.cmp(4, 1) == GREATER
    with pytest.raises(ValueError):
        GapVertexOrder(0)


def test_gap_order_strict_greater_threshold():
    # a vertex admits something strictly above it iff its index is at most n-k
    n = 8
    for k in range(1, n + 1):
        pv = GapVertexOrder(k)
        for i in range(1, n + 1):
            has_greater = any(pv.cmp(i, j) == LESS for j in range(1, n + 1))
            assert has_greater == (i <= n - k)


def test_k_preorders_validation():
    d = _random_distance(5, np.random.default_rng(2))
    with pytest.raises(ValueError):
        k_preorders(d, 0)
    with pytest.raises(ValueError):
        k_preorders(d, 6)


def test_delta_preorders_validation():
    d = _random_distance(5, np.random.default_rng(3))
    with pytest.raises(ValueError):
        delta_preorders(d, 0.0)


def test_k_unique_maximal_when_admissible_target_exists():
    rng = np.random.default_rng(4)
    for trial in range(30):
        n = int(rng.integers(3, 9))
        k = int(rng.integers(1, n + 1))
        d = _random_distance(n, rng)
        pv, pe = k_preorders(d, k)
        adj = d.graph.adjacency()
        for v in range(1, n + 1):
            nbrs = adj[v]
            admissible = [t for t in nbrs if pv.cmp(v, t) == LESS]
            maximal = _maximal_edges(pe, v, nbrs)
            if admissible:
                assert len(maximal) == 1
                assert maximal[0] in admissible


def test_delta_unique_maximal_when_candidate_exists():
    rng = np.random.default_rng(5)
    for trial in range(30):
        n = int(rng.integers(3, 9))
        delta = float(rng.uniform(0.5, 2.5))
        d = _random_distance(n, rng)
        pv, pe = delta_preorders(d, delta)
        adj = d.graph.adjacency()
        for v in range(1, n + 1):
            nbrs = adj[v]
            candidates = [t for t in nbrs if t > v and d.d(v, t) < delta]
            maximal = _maximal_edges(pe, v, nbrs)
            if candidates:
                assert len(maximal) == 1
                assert maximal[0] in candidates


def test_delta_long_edge_never_dominates_candidate():
    g = Graph(3, [(1, 2), (1, 3)])
    d = PseudoDistance(g, {(1, 2): 0.4, (1, 3): 5.0})
    _, pe = delta_preorders(d, 1.0)
    assert pe.cmp(1, 3, 2) == LESS
    assert pe.cmp(1, 2, 3) == GREATER


def test_preorder_audits_on_random_graphs():
    rng = np.random.default_rng(6)
    for trial in range(10):
        n = int(rng.integers(3, 9))
        g = complete_graph(n)
        d = _random_distance(n, rng, g)
        for pv, pe in (
            sir_preorders(d),
            k_preorders(d, int(rng.integers(1, n + 1))),
            delta_preorders(d, float(rng.uniform(0.3, 3.0))),
        ):
            audit_vertex_preorder(pv, n)
            audit_edge_preorder(pe, g)
        pv, pe, _ = unsupervised_preorders(g)
        audit_vertex_preorder(pv, n)
        audit_edge_preorder(pe, g)


def test_common_neighbor_weights_examples():
    triangle = complete_graph(3)
    assert set(common_neighbor_weights(triangle).values()) == {1.0}
    clique4 = complete_graph(4)
    assert set(common_neighbor_weights(clique4).values()) == {2.0}
    star = Graph(4, [(1, 2), (1, 3), (1, 4)])
    assert set(common_neighbor_weights(star).values()) == {0.0}


def test_unsupervised_star_all_ties():
    star = Graph(4, [(1, 2), (1, 3), (1, 4)])
    pv, pe, sim = unsupervised_preorders(star)
    assert all(x == 0.0 for x in sim.values())
    # at the hub every pair of edges ties on weight and on target annotation
    assert pe.cmp(1, 2, 3) == EQUIVALENT
    assert pe.cmp(1, 3, 4) == EQUIVALENT


def test_unsupervised_requires_an_edge():
    with pytest.raises(ValueError):
        unsupervised_preorders(Graph(3))


def test_epsilon_tie_detection():
    from morseclust.flow import morse_flow

    g = complete_graph(3)
    d = PseudoDistance(g, {(1, 2): 1.0, (1, 3): 1.0 + 1e-12, (2, 3): 5.0})
    _, pe = sir_preorders(d)
    assert pe.cmp(1, 2, 3) == GREATER  # exact comparison sees distinct weights
    pv2, pe2 = sir_preorders(d, eps=1e-9)
    assert pe2.cmp(1, 2, 3) == EQUIVALENT
    assert morse_flow(g, pe2, pv2).phi[1] == 1  # tie leaves vertex 1 critical


def test_strict_max_specializations_match_generic_sweep():
    from morseclust.preorders import EdgePreorder

    rng = np.random.default_rng(7)
    for trial in range(30):
        n = int(rng.integers(3, 9))
        g = complete_graph(n)
        d = _random_distance(n, rng, g)
        if trial % 3 == 0:
            # force plenty of ties
            d = PseudoDistance(g, {e: float(rng.integers(1, 4)) for e in g.edges})
        orders = [
            sir_preorders(d)[1],
            k_preorders(d, int(rng.integers(1, n + 1)))[1],
            delta_preorders(d, float(rng.uniform(0.3, 3.0)))[1],
            unsupervised_preorders(g)[1],
        ]
        adj = g.adjacency()
        for pe in orders:
            for v in range(1, n + 1):
                fast = pe.strict_max(v, adj[v])
                generic = EdgePreorder.strict_max(pe, v, adj[v])
                assert fast == generic, (type(pe).__name__, v)


def test_parse_instance():
    assert parse_instance("sir") == MorseInstance("sir")
    assert parse_instance("k:3") == MorseInstance("k", k=3)
    assert parse_instance("delta:0.5") == MorseInstance("delta", delta=0.5)
    assert parse_instance("unsup") == MorseInstance("unsup")
    with pytest.raises(ValueError):
        parse_instance("nope")
    with pytest.raises(ValueError):
        MorseInstance("k", k=0)
    with pytest.raises(ValueError):
        MorseInstance("delta", delta=-1.0)
