import numpy as np
import pytest
from sklearn.metrics import normalized_mutual_info_score

from morseclust.benchmark import (
    benchmark_sweep,
    generate_planted,
    nmi,
    run_benchmark,
)
from morseclust.graph import Partition, connected_components, is_refinement
from morseclust.preorders import MorseInstance


def test_nmi_identity_and_degenerate_conventions():
    p = Partition(4, [[1, 2], [3, 4]])
    assert nmi(p, p) == 1.0
    assert nmi(Partition.trivial(4), Partition.trivial(4)) == 1.0
    assert nmi(Partition.singletons(4), Partition.trivial(4)) == 0.0
    with pytest.raises(ValueError):
        nmi(p, Partition.trivial(5))


def test_nmi_hand_computed_zero():
    # 2x2 contingency with all cells equal has zero mutual information
    p = Partition(4, [[1, 2], [3, 4]])
    q = Partition(4, [[1, 3], [2, 4]])
    assert nmi(p, q) == 0.0


def test_nmi_symmetry_and_sklearn_agreement():
    rng = np.random.default_rng(0)
    for _ in range(20):
        n = int(rng.integers(4, 30))
        a = Partition(n, _random_clusters(n, rng))
        b = Partition(n, _random_clusters(n, rng))
        assert abs(nmi(a, b) - nmi(b, a)) <= 1e-12
        skl = normalized_mutual_info_score(a.labels()[1:], b.labels()[1:])
        assert nmi(a, b) == pytest.approx(skl, abs=1e-9)


def _random_clusters(n, rng, kmax=4):
    labels = rng.integers(0, kmax, n)
    clusters = [[v + 1 for v in range(n) if labels[v] == c] for c in range(kmax)]
    return [c for c in clusters if c]


def test_generate_planted_determinism():
    a = generate_planted(200, 4, 10.0, 0.2, seed=7)
    b = generate_planted(200, 4, 10.0, 0.2, seed=7)
    assert a.graph == b.graph and a.truth == b.truth
    c = generate_planted(200, 4, 10.0, 0.2, seed=8)
    assert c.graph != a.graph


def test_generate_planted_mu_zero_edges_intra():
    bench = generate_planted(60, 3, 6.0, 0.0, seed=1)
    lab = bench.truth.labels()
    for u, v in bench.graph.edges:
        assert lab[u] == lab[v]
    comps = connected_components(bench.graph)
    assert is_refinement(comps, bench.truth)
    # every vertex keeps at least one in-community neighbour
    adj = bench.graph.adjacency()
    assert all(adj[v] for v in bench.graph.vertices())


def test_generate_planted_mu_one_no_intra():
    bench = generate_planted(40, 2, 6.0, 1.0, seed=2)
    lab = bench.truth.labels()
    for u, v in bench.graph.edges:
        assert lab[u] != lab[v]


def test_generate_planted_feasibility_errors():
    with pytest.raises(ValueError):
        generate_planted(20, 4, 10.0, 0.0, seed=0)  # intra degree too large
    with pytest.raises(ValueError):
        generate_planted(10, 20, 3.0, 0.5, seed=0)
    with pytest.raises(ValueError):
        generate_planted(20, 2, 5.0, 1.5, seed=0)


def test_run_benchmark_scores_and_instance_guard():
    inst = MorseInstance("unsup")
    bench = generate_planted(120, 12, 7.0, 0.05, seed=3)
    out = run_benchmark(inst, bench)
    assert 0.0 <= out["nmi"] <= 1.0
    assert out["clusters_true"] == 12
    with pytest.raises(ValueError):
        run_benchmark(MorseInstance("sir"), bench)


def test_unsupervised_high_nmi_on_tight_communities():
    inst = MorseInstance("unsup")
    rows = benchmark_sweep(inst, [0.05], list(range(6)), n=300, communities=25, degree=8.0)
    assert rows[0]["mean_nmi"] >= 0.9


def test_sweep_is_deterministic():
    inst = MorseInstance("unsup")
    a = benchmark_sweep(inst, [0.3], [0, 1], n=80, communities=4, degree=8.0)
    b = benchmark_sweep(inst, [0.3], [0, 1], n=80, communities=4, degree=8.0)
    assert a == b
