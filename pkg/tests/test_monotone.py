import math

import numpy as np
import pytest

from morseclust.axioms import sample_expansive_map
from morseclust.graph import Graph, Partition, PseudoDistance, complete_graph
from morseclust.monotone import (
    ExpansiveMap,
    aligned_triples,
    apply_monotonic,
    compose,
    detect_monotonic,
    is_metric,
    metric_constants,
)


def _random_distance(n, rng, low=0.5, high=2.5):
    g = complete_graph(n)
    return PseudoDistance(g, {e: float(rng.uniform(low, high)) for e in sorted(g.edges)})


def _random_partition(n, rng, max_clusters=3):
    labels = rng.integers(0, max_clusters, n)
    clusters = [[v + 1 for v in range(n) if labels[v] == c] for c in range(max_clusters)]
    return Partition(n, [c for c in clusters if c])


def test_linear_map_eval_and_inverse():
    eta = ExpansiveMap.linear(2.0)
    assert eta(3.0) == 6.0
    assert eta.inverse(6.0) == 3.0
    ident = ExpansiveMap.identity()
    for x in (0.0, 0.5, 7.25):
        assert ident(x) == x


def test_step_map_example():
    eta = ExpansiveMap.step(1.0, 2.0, 3.0)
    # second branch: 3 * (1.5 - 1) + 1
    assert eta(1.5) == 2.5
    assert eta(1.0) == 1.0
    assert eta(2.0) == 4.0
    assert eta(3.0) == 5.0  # unit slope past the top breakpoint
    assert eta.inverse(2.5) == 1.5


def test_expansive_validation():
    with pytest.raises(ValueError):
        ExpansiveMap([0.0, 1.0], [0.0, 0.5])  # slope < 1
    with pytest.raises(ValueError):
        ExpansiveMap([0.0, 1.0], [0.1, 1.1])  # does not fix 0
    with pytest.raises(ValueError):
        ExpansiveMap([0.0, 1.0], [0.0, 1.0], tail_slope=0.9)
    with pytest.raises(ValueError):
        ExpansiveMap([0.0, 1.0, 1.0], [0.0, 1.0, 2.0])
    eta = ExpansiveMap([0.0, 1.0], [0.0, 1.5], tail_slope=2.0)
    with pytest.raises(ValueError):
        eta(-0.1)
    with pytest.raises(ValueError):
        eta.inverse(-0.1)


def test_gap_growth_and_inverse_bounds():
    rng = np.random.default_rng(0)
    for _ in range(20):
        eta = sample_expansive_map(rng)
        xs = np.sort(rng.uniform(0, 6, 30))
        for x, y in zip(xs[1:], xs[:-1]):
            assert eta(x) - eta(y) >= (x - y) - 1e-12
        for x in xs:
            assert eta.inverse(x) <= x + 1e-12 <= eta(x) + 2e-12
            assert abs(eta.inverse(eta(x)) - x) <= 1e-9


def test_compose_examples():
    eta = ExpansiveMap([0.0, 1.0], [0.0, 2.0], tail_slope=1.5)
    assert compose(ExpansiveMap.identity(), eta)(0.7) == pytest.approx(eta(0.7), abs=1e-12)
    six = compose(ExpansiveMap.linear(2.0), ExpansiveMap.linear(3.0))
    assert six(1.25) == pytest.approx(7.5, abs=1e-12)
    rng = np.random.default_rng(1)
    e1, e2 = sample_expansive_map(rng), sample_expansive_map(rng)
    comp = compose(e1, e2)
    for x in rng.uniform(0, 8, 100):
        assert comp(x) == pytest.approx(e2(e1(x)), rel=1e-9, abs=1e-9)


def test_apply_monotonic_linear_example():
    g = complete_graph(3)
    d = PseudoDistance(g, {(1, 2): 4.0, (1, 3): 1.0, (2, 3): 3.0})
    p = Partition(3, [[1, 2], [3]])
    out = apply_monotonic(d, p, ExpansiveMap.linear(2.0))
    assert out.d(1, 2) == 2.0
    assert out.d(1, 3) == 2.0
    assert out.d(2, 3) == 6.0
    unchanged = apply_monotonic(d, p, ExpansiveMap.identity())
    assert unchanged == d


def test_apply_monotonic_discretized_quadratic():
    # eta(x) = (x^2 + x) / alpha at alpha = 1/2, discretised at the three
    # distance values it gets applied to
    alpha = 0.5
    intra_new = (-1.0 + math.sqrt(1.0 + 2.0 * alpha * alpha)) / 2.0
    eta = ExpansiveMap.from_points(
        [(intra_new, alpha / 2), (alpha, (alpha**2 + alpha) / alpha), (1.0, 2.0 / alpha)]
    )
    g = complete_graph(4)
    p = Partition(4, [[1, 2], [3, 4]])
    d = PseudoDistance(
        g,
        {(1, 2): alpha / 2, (3, 4): alpha / 2, (1, 3): 1.0, (1, 4): alpha, (2, 3): alpha, (2, 4): alpha},
    )
    out = apply_monotonic(d, p, eta)
    assert out.d(1, 2) == pytest.approx(intra_new, abs=1e-12)
    assert out.d(1, 2) == pytest.approx(0.11237, abs=5e-6)
    assert out.d(1, 3) == pytest.approx(4.0, abs=1e-12)
    assert out.d(2, 4) == pytest.approx(1.5, abs=1e-12)


def test_detect_monotonic_round_trip_exact_reproduction():
    rng = np.random.default_rng(2)
    for _ in range(50):
        n = int(rng.integers(3, 8))
        d = _random_distance(n, rng)
        p = _random_partition(n, rng)
        eta = sample_expansive_map(rng)
        dprime = apply_monotonic(d, p, eta)
        wit = detect_monotonic(d, dprime, p)
        assert wit.valid, wit
        redo = apply_monotonic(d, p, wit.eta)
        for e, x in dprime.items():
            assert redo.w[e] == x  # witness reproduces exactly


def test_detect_monotonic_identity_and_errors():
    rng = np.random.default_rng(3)
    d = _random_distance(5, rng)
    p = _random_partition(5, rng)
    assert detect_monotonic(d, d, p).valid
    other = _random_distance(4, rng)
    with pytest.raises(ValueError):
        detect_monotonic(d, other, p)


def test_detect_monotonic_rejects_subcluster_emphasis():
    # shrink distances inside two halves of a cluster, keep the rest: the
    # collapsed halves force a sub-unit slope somewhere
    rng = np.random.default_rng(4)
    for _ in range(25):
        n = int(rng.integers(4, 8))
        d = _random_distance(n, rng, low=1.0, high=2.0)
        p = Partition.trivial(n)
        half = n // 2
        new = {}
        for (u, v), x in d.items():
            same_half = (u <= half) == (v <= half)
            new[(u, v)] = x * 0.1 if same_half else x
        dprime = PseudoDistance(d.graph, new)
        wit = detect_monotonic(d, dprime, p)
        assert not wit.valid
        assert wit.verdict in ("conflict", "slope_violation")


def test_detect_monotonic_conflict_verdict():
    g = complete_graph(3)
    d = PseudoDistance(g, {(1, 2): 1.0, (1, 3): 2.0, (2, 3): 2.0})
    # two intra pairs with equal new value but different old values
    dprime = PseudoDistance(g, {(1, 2): 0.5, (1, 3): 0.5, (2, 3): 1.8})
    wit = detect_monotonic(d, dprime, Partition.trivial(3))
    assert wit.verdict == "conflict"
    assert wit.detail[0] == 0.5


def test_detect_monotonic_slope_verdict_and_exact_mode():
    g = complete_graph(3)
    d = PseudoDistance(g, {(1, 2): 1.0, (1, 3): 2.0, (2, 3): 3.0})
    dprime = PseudoDistance(g, {(1, 2): 0.9, (1, 3): 1.95, (2, 3): 2.0})
    wit = detect_monotonic(d, dprime, Partition.trivial(3))
    assert wit.verdict == "slope_violation"
    # a hair below unit slope passes with the default tolerance but not exact mode
    dp2 = PseudoDistance(g, {(1, 2): 0.5, (1, 3): 1.5 + 1e-13, (2, 3): 2.5 + 2e-13})
    assert detect_monotonic(d, dp2, Partition.trivial(3)).valid
    assert not detect_monotonic(d, dp2, Partition.trivial(3), exact=True).valid


def test_aligned_triples():
    g = complete_graph(3)
    line = PseudoDistance(g, {(1, 2): 1.0, (2, 3): 1.0, (1, 3): 2.0})
    assert (1, 2, 3) in aligned_triples(line)
    equilateral = PseudoDistance(g, {(1, 2): 1.0, (2, 3): 1.0, (1, 3): 1.0})
    assert aligned_triples(equilateral) == []
    rng = np.random.default_rng(5)
    for _ in range(10):
        assert aligned_triples(_random_distance(6, rng, 1.0, 2.0)) == []
    incomplete = PseudoDistance(Graph(3, [(1, 2)]), {(1, 2): 1.0})
    with pytest.raises(ValueError):
        aligned_triples(incomplete)


def _brute_constants(d, p):
    lab = p.labels()
    n = d.n
    c_p = c_u = math.inf
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                if len({i, j, k}) < 3:
                    continue
                if d.d(i, k) > d.d(j, k):
                    val = math.sqrt(d.d(i, j) / (d.d(i, k) - d.d(j, k)))
                    c_u = min(c_u, val)
                    if lab[i] == lab[j] and lab[i] != lab[k]:
                        c_p = min(c_p, val)
    return c_p, c_u


def test_metric_constants_derived_examples():
    g = complete_graph(3)
    d = PseudoDistance(g, {(1, 2): 1.0, (1, 3): 2.0, (2, 3): 1.8})
    p = Partition(3, [[1, 2], [3]])
    got = metric_constants(d, p)
    brute_p, brute_u = _brute_constants(d, p)
    assert got.c_universal == pytest.approx(brute_u, abs=1e-12)
    assert got.c_partition == pytest.approx(brute_p, abs=1e-12)
    assert got.c_universal == pytest.approx(math.sqrt(1.8), abs=1e-9)
    assert got.universal_triple == (3, 2, 1)
    assert got.c_partition == pytest.approx(math.sqrt(5.0), abs=1e-9)
    assert got.partition_triple == (1, 2, 3)
    assert got.c_universal <= got.c_partition
    assert got.c_universal > 1.0


def test_metric_constants_infinite_partition_bound():
    g = complete_graph(3)
    d = PseudoDistance(g, {(1, 2): 1.0, (1, 3): 2.0, (2, 3): 2.0})
    got = metric_constants(d, Partition(3, [[1, 2], [3]]))
    assert math.isinf(got.c_partition)
    assert got.c_universal == pytest.approx(math.sqrt(2.0), abs=1e-12)


def test_metric_constants_rejects_bad_inputs():
    g = complete_graph(3)
    non_metric = PseudoDistance(g, {(1, 2): 1.0, (1, 3): 5.0, (2, 3): 1.0})
    with pytest.raises(ValueError):
        metric_constants(non_metric, Partition.trivial(3))
    aligned = PseudoDistance(g, {(1, 2): 1.0, (2, 3): 1.0, (1, 3): 2.0})
    with pytest.raises(ValueError):
        metric_constants(aligned, Partition.trivial(3))


def test_metric_preservation_and_violation():
    rng = np.random.default_rng(6)
    done = 0
    while done < 30:
        n = int(rng.integers(3, 8))
        d = _random_distance(n, rng, low=1.0, high=2.0)  # always a metric
        assert is_metric(d)
        if aligned_triples(d):
            continue
        p = _random_partition(n, rng)
        if len(p) == 1:
            continue
        consts = metric_constants(d, p)
        s_mid = 2.0 if math.isinf(consts.c_partition) else (1.0 + consts.c_partition) / 2.0
        mid = apply_monotonic(d, p, ExpansiveMap.linear(s_mid))
        assert is_metric(mid, tol=1e-12)
        if not math.isinf(consts.c_partition):
            s_over = 1.01 * consts.c_partition
            over = apply_monotonic(d, p, ExpansiveMap.linear(s_over))
            i, j, k = consts.partition_triple
            assert over.d(i, k) > over.d(i, j) + over.d(j, k) + 1e-12
        done += 1
