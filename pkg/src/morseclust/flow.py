"""Morse flow and Morse partition of a preordered graph.

The flow sends each vertex along its unique maximal outward edge when that
edge exists, is unique, and ascends the vertex preorder; otherwise the
vertex is critical (a sink).  Removing the edges that take part in no flow
step leaves a forest of directed trees rooted at the critical vertices;
the trees are the basins of attraction and form the Morse partition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, Partition, connected_components
from .preorders import EdgePreorder, LESS, VertexPreorder

__all__ = [
    "MorseFlow",
    "MorseForest",
    "morse_flow",
    "morse_forest",
    "morse_partition",
    "iterate_flow",
    "stabilization_steps",
    "check_refinement_lemma",
]


@dataclass(frozen=True)
class MorseFlow:
    """The flow map plus its derived critical sets.

    ``phi`` is indexed by vertex (entry 0 unused); ``phi[v] == v`` marks a
    critical vertex.  ``flow_edges`` are the directed steps (v, phi[v]) in
    ascending source order.
    """

    graph: Graph
    phi: tuple[int, ...]
    critical_vertices: frozenset[int]
    flow_edges: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        return self.graph.n

    def flow_edges_undirected(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) if u < v else (v, u) for u, v in self.flow_edges)

    @property
    def critical_edges(self) -> frozenset[tuple[int, int]]:
        """Undirected edges with neither orientation in the flow.

        Materialised on first access (it is the m-sized complement of the
        at-most-n flow edges) and cached.
        """
        cached = getattr(self, "_critical_edges", None)
        if cached is None:
            cached = frozenset(self.graph.edges - self.flow_edges_undirected())
            object.__setattr__(self, "_critical_edges", cached)
        return cached


def morse_flow(g: Graph, pe: EdgePreorder, pv: VertexPreorder) -> MorseFlow:
    """Single pass over vertices; O(deg v) work at each vertex.

    A vertex keeps the flow only if a strict maximum exists among its
    outward edges and that edge ascends the vertex preorder.  Isolated
    vertices are critical.
    """
    adj = g.adjacency()
    phi = list(range(g.n + 1))
    strict_max = pe.strict_max
    vcmp = pv.cmp
    for v in g.vertices():
        nbrs = adj[v]
        if not nbrs:
            continue
        best = strict_max(v, nbrs)
        if best is not None and vcmp(v, best) == LESS:
            phi[v] = best
    return MorseFlow(
        graph=g,
        phi=tuple(phi),
        critical_vertices=frozenset(v for v in g.vertices() if phi[v] == v),
        flow_edges=tuple((v, phi[v]) for v in g.vertices() if phi[v] != v),
    )


@dataclass(frozen=True)
class MorseForest:
    """Basins of attraction with their rooted trees and depths.

    ``basins[r]`` is the set of vertices whose flow iteration ends at the
    critical vertex ``r``; ``trees[r]`` holds the directed flow edges inside
    that basin (pointing towards the root); ``depth[r]`` is the maximal hop
    count to the root.
    """

    basins: dict[int, frozenset[int]]
    trees: dict[int, tuple[tuple[int, int], ...]]
    depth: dict[int, int]

    def root_of(self) -> dict[int, int]:
        return {v: r for r, members in self.basins.items() for v in members}


def morse_forest(flow: MorseFlow) -> MorseForest:
    """Resolve every vertex to its root with memoised path compression."""
    phi = flow.phi
    n = flow.n
    root = [0] * (n + 1)
    depth = [-1] * (n + 1)
    for v in range(1, n + 1):
        path = []
        u = v
        while depth[u] < 0 and phi[u] != u:
            path.append(u)
            u = phi[u]
        if depth[u] < 0:
            depth[u] = 0
            root[u] = u
        for w in reversed(path):
            depth[w] = depth[phi[w]] + 1
            root[w] = root[phi[w]]
    basins: dict[int, list[int]] = {r: [] for r in flow.critical_vertices}
    for v in range(1, n + 1):
        basins[root[v]].append(v)
    trees: dict[int, list[tuple[int, int]]] = {r: [] for r in flow.critical_vertices}
    for v, w in flow.flow_edges:
        trees[root[v]].append((v, w))
    return MorseForest(
        basins={r: frozenset(vs) for r, vs in basins.items()},
        trees={r: tuple(es) for r, es in trees.items()},
        depth={r: max((depth[v] for v in vs), default=0) for r, vs in basins.items()},
    )


def morse_partition(
    g: Graph, pe: EdgePreorder, pv: VertexPreorder
) -> tuple[Partition, MorseFlow, MorseForest]:
    """Flow, then the connected components after dropping critical edges.

    What survives the drop is exactly the undirected flow edges.  The
    component partition coincides with the basin partition; every cluster
    is connected in the input graph.
    """
    flow = morse_flow(g, pe, pv)
    remaining = Graph(g.n, flow.flow_edges_undirected())
    partition = connected_components(remaining)
    return partition, flow, morse_forest(flow)


def iterate_flow(flow: MorseFlow, v: int) -> tuple[int, list[int]]:
    """Follow the flow from ``v`` to its critical root; returns (root, path)."""
    if not 1 <= v <= flow.n:
        raise ValueError(f"vertex {v} out of range 1..{flow.n}")
    phi = flow.phi
    path = [v]
    while phi[path[-1]] != path[-1]:
        path.append(phi[path[-1]])
    return path[-1], path


def stabilization_steps(flow: MorseFlow) -> int:
    """Smallest N with the N-fold flow equal to the (N+1)-fold flow.

    Computed literally by repeated composition (at most n steps).
    """
    phi = flow.phi
    cur = list(range(flow.n + 1))
    steps = 0
    while True:
        nxt = [phi[u] for u in cur]
        if nxt == cur:
            return steps
        cur = nxt
        steps += 1


def check_refinement_lemma(f1: MorseFlow, f2: MorseFlow) -> bool:
    """Whether every vertex stays inside its f1-cluster under one f2 step.

    When true, the partition of ``f2`` refines the partition of ``f1``.
    """
    if f1.n != f2.n:
        raise ValueError("flows are over different vertex sets")
    basins = morse_forest(f1).root_of()
    return all(basins[v] == basins[f2.phi[v]] for v in range(1, f1.n + 1))
