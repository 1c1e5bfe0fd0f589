"""Graphs, edge-supported distances, partitions, and their structural predicates.

Vertices are 1-based indices ``1..n``; the index order doubles as the fixed
vertex labelling used by the clustering instances.  All types are immutable
after construction and all operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

__all__ = [
    "Graph",
    "PseudoDistance",
    "Partition",
    "ExtremalStats",
    "complete_graph",
    "scale",
    "connected_components",
    "is_refinement",
    "is_connected_partition",
    "extremal_stats",
]


def normalize_edge(u: int, v: int) -> tuple[int, int]:
    """Canonical (min, max) form of an undirected edge."""
    if u == v:
        raise ValueError(f"self-loop {u!r} is not a valid edge")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Finite undirected loopless graph on vertices ``1..n``.

    Edges are stored as canonical ``(min, max)`` pairs.
    """

    n: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 1:
            raise ValueError(f"graph needs at least one vertex, got n={n}")
        norm = frozenset(normalize_edge(u, v) for u, v in edges)
        for u, v in norm:
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u},{v}) has endpoint outside 1..{n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", norm)

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_edge(u, v) in self.edges

    def adjacency(self) -> list[list[int]]:
        """Neighbour lists indexed by vertex (entry 0 unused), sorted ascending.

        Computed once and cached; callers must not mutate the lists.
        """
        cached = getattr(self, "_adjacency", None)
        if cached is None:
            adj: list[list[int]] = [[] for _ in range(self.n + 1)]
            for u, v in self.edges:
                adj[u].append(v)
                adj[v].append(u)
            for lst in adj:
                lst.sort()
            object.__setattr__(self, "_adjacency", adj)
            cached = adj
        return cached

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)


def complete_graph(n: int) -> Graph:
    """All-to-all graph on ``1..n`` (n*(n-1)/2 edges)."""
    return Graph(n, ((u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)))


class PseudoDistance:
    """Strictly positive symmetric weights supported exactly on the edge set.

    Non-edges have semantic value 0; a distance on a plain set is the
    complete-graph case.
    """

    __slots__ = ("graph", "w")

    def __init__(self, graph: Graph, w: Mapping[tuple[int, int], float]):
        weights = {normalize_edge(u, v): float(x) for (u, v), x in w.items()}
        if set(weights) != graph.edges:
            missing = graph.edges - set(weights)
            extra = set(weights) - graph.edges
            raise ValueError(
                f"weight support must equal the edge set (missing={sorted(missing)[:4]}, "
                f"extra={sorted(extra)[:4]})"
            )
        for e, x in weights.items():
            if not x > 0.0:
                raise ValueError(f"weight for edge {e} must be > 0, got {x}")
        self.graph = graph
        self.w = weights

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PseudoDistance)
            and self.graph == other.graph
            and self.w == other.w
        )

    def __hash__(self):
        return hash((self.graph, frozenset(self.w.items())))

    def __repr__(self):
        return f"PseudoDistance(n={self.n}, m={self.graph.m})"

    @property
    def n(self) -> int:
        return self.graph.n

    def d(self, u: int, v: int) -> float:
        """Weight of edge {u,v}, or 0.0 for non-edges and u == v."""
        if u == v:
            return 0.0
        return self.w.get(normalize_edge(u, v), 0.0)

    def items(self):
        return self.w.items()

    def is_complete(self) -> bool:
        return self.graph.m == self.n * (self.n - 1) // 2


def scale(d: PseudoDistance, alpha: float) -> PseudoDistance:
    """Multiply every weight by ``alpha`` > 0; the support is unchanged."""
    if not alpha > 0:
        raise ValueError(f"scale factor must be > 0, got {alpha}")
    return PseudoDistance(d.graph, {e: alpha * x for e, x in d.items()})


@dataclass(frozen=True)
class Partition:
    """Disjoint non-empty clusters of vertex indices covering ``1..n``.

    Stored canonically: clusters sorted by smallest member, members ascending,
    so equality is plain structural equality.
    """

    n: int
    clusters: tuple[tuple[int, ...], ...]

    def __init__(self, n: int, clusters: Iterable[Iterable[int]]):
        canon = sorted((tuple(sorted(set(c))) for c in clusters), key=lambda c: c[0] if c else 0)
        seen: set[int] = set()
        for c in canon:
            if not c:
                raise ValueError("empty cluster")
            if seen & set(c):
                raise ValueError(f"clusters are not disjoint at {sorted(seen & set(c))}")
            seen |= set(c)
        if seen != set(range(1, n + 1)):
            raise ValueError(f"clusters must cover 1..{n} exactly, got {sorted(seen)}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "clusters", tuple(canon))

    def __len__(self) -> int:
        return len(self.clusters)

    def labels(self) -> list[int]:
        """0-based cluster label per vertex, entry 0 unused."""
        lab = [0] * (self.n + 1)
        for i, c in enumerate(self.clusters):
            for v in c:
                lab[v] = i
        return lab

    def same_cluster(self, u: int, v: int) -> bool:
        lab = self.labels()
        return lab[u] == lab[v]

    def is_trivial(self) -> bool:
        return len(self.clusters) == 1

    @staticmethod
    def trivial(n: int) -> "Partition":
        return Partition(n, [range(1, n + 1)])

    @staticmethod
    def singletons(n: int) -> "Partition":
        return Partition(n, [[v] for v in range(1, n + 1)])


def connected_components(g: Graph) -> Partition:
    """Connected components as a partition (canonical cluster order)."""
    adj = g.adjacency()
    seen = [False] * (g.n + 1)
    comps: list[list[int]] = []
    for s in g.vertices():
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(comp)
    return Partition(g.n, comps)


def is_refinement(p: Partition, q: Partition) -> bool:
    """True iff every cluster of ``p`` is a subset of some cluster of ``q``."""
    if p.n != q.n:
        raise ValueError(f"partitions are over different vertex sets ({p.n} vs {q.n})")
    qlab = q.labels()
    for c in p.clusters:
        lab = qlab[c[0]]
        if any(qlab[v] != lab for v in c):
            return False
    return True


def is_connected_partition(g: Graph, p: Partition) -> bool:
    """True iff each cluster induces a connected subgraph of ``g``."""
    if p.n != g.n:
        raise ValueError(f"partition is over {p.n} vertices, graph has {g.n}")
    adj = g.adjacency()
    for c in p.clusters:
        members = set(c)
        stack = [c[0]]
        seen = {c[0]}
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w in members and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != members:
            return False
    return True


@dataclass(frozen=True)
class ExtremalStats:
    """Extremal intra/inter-cluster edge weights for a (distance, partition) pair.

    ``max_intra``/``min_intra`` are None when no intra-cluster edge exists
    (never 0: the value 0 is reserved for the trivial-partition inter case).
    For the trivial one-cluster partition ``min_inter = max_inter = 0.0`` by
    definition; a non-trivial partition with no inter-cluster edge reports None.
    """

    max_intra: float | None
    min_intra: float | None
    min_inter: float | None
    max_inter: float | None


def extremal_stats(d: PseudoDistance, p: Partition) -> ExtremalStats:
    if p.n != d.n:
        raise ValueError(f"partition is over {p.n} vertices, distance over {d.n}")
    lab = p.labels()
    intra = [x for (u, v), x in d.items() if lab[u] == lab[v]]
    inter = [x for (u, v), x in d.items() if lab[u] != lab[v]]
    if p.is_trivial():
        min_inter, max_inter = 0.0, 0.0
    elif inter:
        min_inter, max_inter = min(inter), max(inter)
    else:
        min_inter, max_inter = None, None
    if intra:
        max_intra, min_intra = max(intra), min(intra)
    else:
        max_intra, min_intra = None, None
    return ExtremalStats(max_intra, min_intra, min_inter, max_inter)
