"""Planted-partition benchmarks and normalized-mutual-information scoring.

A desk-scale stand-in for power-law community benchmarks: communities of
(near-)equal size, Bernoulli intra/inter edges tuned so a vertex spends a
``mu`` fraction of its expected degree outside its own community.  Scores
use NMI with arithmetic-mean normalization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph, Partition
from .flow import morse_partition
from .preorders import MorseInstance, unsupervised_preorders

__all__ = [
    "PlantedBenchmark",
    "generate_planted",
    "nmi",
    "run_benchmark",
    "benchmark_sweep",
]


@dataclass(frozen=True)
class PlantedBenchmark:
    """A generated graph with its ground-truth communities."""

    graph: Graph
    truth: Partition
    mu: float
    seed: int


def generate_planted(
    n: int, communities: int, degree: float, mu: float, seed: int
) -> PlantedBenchmark:
    """Bernoulli blockmodel with expected degree ``degree`` and mixing ``mu``.

    Every vertex is guaranteed at least one intra-community neighbour when
    ``mu < 1`` and its community has at least two members.  Identical seeds
    give identical graphs.
    """
    if n < 2 or communities < 1 or communities > n:
        raise ValueError(f"infeasible sizes: n={n}, communities={communities}")
    if not 0.0 <= mu <= 1.0:
        raise ValueError(f"mixing must be in [0, 1], got {mu}")
    sizes = [n // communities + (1 if i < n % communities else 0) for i in range(communities)]
    smallest = min(sizes)
    if degree * (1.0 - mu) > smallest - 1:
        raise ValueError(
            f"intra degree {degree * (1 - mu):.1f} exceeds community capacity {smallest - 1}"
        )
    if communities > 1 and degree * mu > n - max(sizes):
        raise ValueError("inter degree exceeds the number of outside vertices")

    member: list[int] = [0] * (n + 1)
    clusters: list[list[int]] = []
    v = 1
    for c, size in enumerate(sizes):
        clusters.append(list(range(v, v + size)))
        for u in range(v, v + size):
            member[u] = c
        v += size
    truth = Partition(n, clusters)

    rng = np.random.default_rng(seed)
    edges: set[tuple[int, int]] = set()
    for u in range(1, n + 1):
        su = sizes[member[u]]
        p_in = min(1.0, degree * (1.0 - mu) / (su - 1)) if su > 1 else 0.0
        p_out = degree * mu / (n - su) if n > su else 0.0
        for w in range(u + 1, n + 1):
            p = p_in if member[w] == member[u] else p_out
            if p > 0.0 and rng.random() < p:
                edges.add((u, w))

    if mu < 1.0:
        intra_deg = [0] * (n + 1)
        for u, w in edges:
            if member[u] == member[w]:
                intra_deg[u] += 1
                intra_deg[w] += 1
        for u in range(1, n + 1):
            mates = [w for w in clusters[member[u]] if w != u]
            if mates and intra_deg[u] == 0:
                w = int(mates[rng.integers(0, len(mates))])
                key = (u, w) if u < w else (w, u)
                if key not in edges:
                    edges.add(key)
                    intra_deg[u] += 1
                    intra_deg[w] += 1

    return PlantedBenchmark(Graph(n, edges), truth, mu, seed)


def nmi(p: Partition, q: Partition) -> float:
    """Normalized mutual information, arithmetic-mean normalization.

    Equal partitions score 1 (asserted before any entropy is computed);
    degenerate 0/0 ratios score 0.
    """
    if p.n != q.n:
        raise ValueError(f"partitions are over different vertex sets ({p.n} vs {q.n})")
    if p == q:
        return 1.0
    n = p.n
    counts: dict[tuple[int, int], int] = {}
    pl, ql = p.labels(), q.labels()
    for v in range(1, n + 1):
        key = (pl[v], ql[v])
        counts[key] = counts.get(key, 0) + 1
    p_sizes = [len(c) for c in p.clusters]
    q_sizes = [len(c) for c in q.clusters]
    h_p = -sum(s / n * math.log(s / n) for s in p_sizes if s)
    h_q = -sum(s / n * math.log(s / n) for s in q_sizes if s)
    mi = 0.0
    for (i, j), c in counts.items():
        mi += c / n * math.log((c / n) / ((p_sizes[i] / n) * (q_sizes[j] / n)))
    denom = (h_p + h_q) / 2.0
    if denom == 0.0:
        return 0.0
    return max(0.0, min(1.0, mi / denom))


def cluster_unsupervised(g: Graph) -> Partition:
    """Morse partition from structure alone (common-neighbour similarities)."""
    pv, pe, _ = unsupervised_preorders(g)
    partition, _, _ = morse_partition(g, pe, pv)
    return partition


def run_benchmark(instance: MorseInstance, bench: PlantedBenchmark) -> dict:
    """Cluster one benchmark graph and score it against the planted truth."""
    if instance.kind != "unsup":
        raise ValueError("benchmarks run the structure-driven instance only")
    found = cluster_unsupervised(bench.graph)
    return {
        "mu": bench.mu,
        "seed": bench.seed,
        "nmi": nmi(found, bench.truth),
        "clusters_found": len(found),
        "clusters_true": len(bench.truth),
        "normalization": "arithmetic-mean",
    }


def benchmark_sweep(
    instance: MorseInstance,
    mus: list[float],
    seeds: list[int],
    n: int = 300,
    communities: int = 5,
    degree: float = 12.0,
) -> list[dict]:
    """Mean/std NMI per mixing value over the given seeds."""
    rows = []
    for mu in mus:
        scores = [
            run_benchmark(instance, generate_planted(n, communities, degree, mu, s))["nmi"]
            for s in seeds
        ]
        rows.append(
            {
                "mu": mu,
                "mean_nmi": float(np.mean(scores)),
                "std_nmi": float(np.std(scores)),
                "runs": len(scores),
            }
        )
    return rows
