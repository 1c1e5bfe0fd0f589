"""Vertex and edge preorders that drive the Morse flow.

A preorder is reflexive and transitive; comparators report one of LESS,
EQUIVALENT, GREATER, or INCOMPARABLE.  Edge comparators only ever compare
two edges sharing their source vertex, so the flow does O(deg v) work per
vertex and never enumerates the full relation.

Four families are provided:

* ``sir_preorders`` -- vertices totally ordered by index, edges at each
  vertex by descending distance (the nearest neighbour is the maximal
  edge); scale-invariant by construction.
* ``k_preorders`` -- vertices ordered only across an index gap of at least
  ``k``, which pins exactly the top ``k`` vertices as critical; admissible
  edges beat non-admissible ones and are ranked by ascending distance with
  index ties.
* ``delta_preorders`` -- vertices by index; only ascending edges shorter
  than ``delta`` can be maximal, ranked by ascending distance with index
  ties.
* ``unsupervised_preorders`` -- edge similarities from common-neighbour
  counts, vertices ranked by their strongest then total incident
  similarity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, PseudoDistance

__all__ = [
    "LESS",
    "EQUIVALENT",
    "GREATER",
    "INCOMPARABLE",
    "VertexPreorder",
    "EdgePreorder",
    "IndexVertexOrder",
    "GapVertexOrder",
    "AnnotationVertexOrder",
    "NearestEdgeOrder",
    "GatedNearestEdgeOrder",
    "SimilarityEdgeOrder",
    "sir_preorders",
    "k_preorders",
    "delta_preorders",
    "common_neighbor_weights",
    "unsupervised_preorders",
    "MorseInstance",
    "parse_instance",
    "audit_vertex_preorder",
    "audit_edge_preorder",
]

LESS = -1
EQUIVALENT = 0
GREATER = 1
INCOMPARABLE = 2

_FLIP = {LESS: GREATER, GREATER: LESS, EQUIVALENT: EQUIVALENT, INCOMPARABLE: INCOMPARABLE}


class VertexPreorder:
    """Comparator over vertices; subclasses implement ``cmp(u, v)``."""

    def cmp(self, u: int, v: int) -> int:
        raise NotImplementedError

    def lt(self, u: int, v: int) -> bool:
        """Strict relation: u below v and v not below u."""
        return self.cmp(u, v) == LESS


class EdgePreorder:
    """Comparator over outward edges sharing a source vertex.

    ``cmp(v, w, t)`` compares the edges (v, w) and (v, t).
    """

    def cmp(self, v: int, w: int, t: int) -> int:
        raise NotImplementedError

    def strict_max(self, v: int, nbrs: list[int]) -> int | None:
        """Target of the strict maximum of the edges at ``v``, or None.

        Generic sweep over pairwise comparisons: one pass finds the only
        possible strict maximum (anything beaten by an earlier best is below
        the final one by transitivity); a confirming pass runs only when the
        sweep saw a tie or incomparability.  Subclasses backed by plain
        weights override this with an equivalent flat scan.
        """
        if not nbrs:
            return None
        cmp = self.cmp
        best = nbrs[0]
        needs_verify = False
        for w in nbrs[1:]:
            c = cmp(v, w, best)
            if c == GREATER:
                best = w
            elif c != LESS:
                needs_verify = True
        if needs_verify:
            for w in nbrs:
                if w != best and cmp(v, w, best) != LESS:
                    return None
        return best


def _tie(a: float, b: float, eps: float) -> bool:
    if eps == 0.0:
        return a == b
    return abs(a - b) <= eps * max(abs(a), abs(b))


class IndexVertexOrder(VertexPreorder):
    """Total order by vertex index."""

    def cmp(self, u: int, v: int) -> int:
        if u == v:
            return EQUIVALENT
        return LESS if u < v else GREATER


class GapVertexOrder(VertexPreorder):
    """Strictly above only across an index gap of at least ``k``.

    Vertices whose indices differ by less than ``k`` are incomparable, so a
    vertex has some strictly greater vertex iff its index is at most n - k.
    """

    def __init__(self, k: int):
        if k < 1:
            raise ValueError(f"gap must be >= 1, got {k}")
        self.k = k

    def cmp(self, u: int, v: int) -> int:
        if u == v:
            return EQUIVALENT
        if v >= u + self.k:
            return LESS
        if u >= v + self.k:
            return GREATER
        return INCOMPARABLE


class AnnotationVertexOrder(VertexPreorder):
    """Total order by annotation key tuples, index as the final component."""

    def __init__(self, keys: dict[int, tuple]):
        self.keys = keys

    def cmp(self, u: int, v: int) -> int:
        if u == v:
            return EQUIVALENT
        a, b = (*self.keys[u], u), (*self.keys[v], v)
        return LESS if a < b else GREATER


def _weight_rows(graph: Graph, w: dict[tuple[int, int], float]) -> list[list[float]]:
    """Per-source weight lists aligned with the cached adjacency order."""
    adj = graph.adjacency()
    return [
        [w[(v, u) if v < u else (u, v)] for u in adj[v]]
        for v in range(graph.n + 1)
    ]


class NearestEdgeOrder(EdgePreorder):
    """Total order (per vertex) by descending weight: nearest edge is maximal.

    Equal weights are equivalent, which downstream makes the source vertex
    critical (no unique maximal edge).
    """

    def __init__(self, d: PseudoDistance, eps: float = 0.0):
        self._w = d.w
        # per-source weight rows; round-tripping through numpy materialises
        # fresh floats in row order, keeping the maximal-edge scan at a flat
        # cost per edge even when the weight table outgrows the cache
        self._rows = [
            np.asarray(row, dtype=float).tolist()
            for row in _weight_rows(d.graph, d.w)
        ]
        self.eps = eps

    def cmp(self, v: int, w: int, t: int) -> int:
        if w == t:
            return EQUIVALENT
        a = self._w[(v, w) if v < w else (w, v)]
        b = self._w[(v, t) if v < t else (t, v)]
        if self.eps == 0.0:
            if a == b:
                return EQUIVALENT
        elif _tie(a, b, self.eps):
            return EQUIVALENT
        return LESS if a > b else GREATER

    def strict_max(self, v: int, nbrs: list[int]) -> int | None:
        # the strict maximum is the unique minimum weight
        if self.eps != 0.0:
            return super().strict_max(v, nbrs)
        row = self._rows[v]
        if not row:
            return None
        m = min(row)
        if row.count(m) > 1:
            return None
        return nbrs[row.index(m)]


class GatedNearestEdgeOrder(EdgePreorder):
    """Candidate edges dominate; the nearest candidate is maximal.

    Subclasses define which targets are candidates.  Candidate edges are
    totally ordered (smaller weight greater, weight ties going to the larger
    target index), every non-candidate edge sits strictly below every
    candidate edge, and distinct non-candidate edges are incomparable.
    This keeps the maximal edge unique (and a candidate) whenever any
    candidate exists, and leaves the source critical otherwise.
    """

    def __init__(self, d: PseudoDistance, eps: float = 0.0):
        self._w = d.w
        self._rows = _weight_rows(d.graph, d.w)
        self.eps = eps

    def _is_candidate(self, v: int, t: int, x: float) -> bool:
        raise NotImplementedError

    def cmp(self, v: int, w: int, t: int) -> int:
        if w == t:
            return EQUIVALENT
        a = self._w[(v, w) if v < w else (w, v)]
        b = self._w[(v, t) if v < t else (t, v)]
        ca = self._is_candidate(v, w, a)
        cb = self._is_candidate(v, t, b)
        if ca and cb:
            if _tie(a, b, self.eps):
                return LESS if w < t else GREATER
            return GREATER if a < b else LESS
        if cb:
            return LESS
        if ca:
            return GREATER
        return INCOMPARABLE

    def strict_max(self, v: int, nbrs: list[int]) -> int | None:
        # among candidates: smallest weight wins, ties to the larger index
        # (nbrs are ascending, so replacing on a tie keeps the later one);
        # with no candidate only a lone edge can be maximal
        if self.eps != 0.0:
            return super().strict_max(v, nbrs)
        row = self._rows[v]
        best_t = None
        best_x = 0.0
        is_candidate = self._is_candidate
        for t, x in zip(nbrs, row):
            if is_candidate(v, t, x) and (best_t is None or x <= best_x):
                best_t, best_x = t, x
        if best_t is not None:
            return best_t
        return nbrs[0] if len(nbrs) == 1 else None


class _KMorseEdgeOrder(GatedNearestEdgeOrder):
    def __init__(self, d, k: int, eps: float = 0.0):
        super().__init__(d, eps)
        self.k = k

    def _is_candidate(self, v: int, t: int, x: float) -> bool:
        return t >= v + self.k


class _DeltaEdgeOrder(GatedNearestEdgeOrder):
    def __init__(self, d, delta: float, eps: float = 0.0):
        super().__init__(d, eps)
        self.delta = delta

    def _is_candidate(self, v: int, t: int, x: float) -> bool:
        return t > v and x < self.delta


class SimilarityEdgeOrder(EdgePreorder):
    """Larger similarity is greater; ties fall back to the target annotation.

    Edges whose similarities and target annotations all tie are equivalent
    (the source vertex then has no unique maximal edge and stays critical).
    """

    def __init__(self, graph: Graph, sim: dict[tuple[int, int], float], keys: dict[int, tuple]):
        self._w = sim
        self._rows = _weight_rows(graph, sim)
        self.keys = keys

    def cmp(self, v: int, w: int, t: int) -> int:
        if w == t:
            return EQUIVALENT
        a = self._w[(v, w) if v < w else (w, v)]
        b = self._w[(v, t) if v < t else (t, v)]
        if a != b:
            return LESS if a < b else GREATER
        ka, kb = self.keys[w], self.keys[t]
        if ka == kb:
            return EQUIVALENT
        return LESS if ka < kb else GREATER

    def strict_max(self, v: int, nbrs: list[int]) -> int | None:
        row = self._rows[v]
        if not row:
            return None
        keys = self.keys
        best_i = 0
        best = (row[0], keys[nbrs[0]])
        tied = False
        for i in range(1, len(row)):
            cand = (row[i], keys[nbrs[i]])
            if cand > best:
                best, best_i, tied = cand, i, False
            elif cand == best:
                tied = True
        return None if tied else nbrs[best_i]


def sir_preorders(d: PseudoDistance, eps: float = 0.0) -> tuple[VertexPreorder, EdgePreorder]:
    """Index order on vertices, nearest-edge order at each vertex."""
    return IndexVertexOrder(), NearestEdgeOrder(d, eps)


def k_preorders(
    d: PseudoDistance, k: int, eps: float = 0.0
) -> tuple[VertexPreorder, EdgePreorder]:
    """Gap-``k`` vertex order with admissible-first edge order.

    Forces exactly the top ``k`` vertices (by index) to be critical, hence
    exactly ``k`` clusters downstream.
    """
    if not 1 <= k <= d.n:
        raise ValueError(f"k must be in 1..{d.n}, got {k}")
    return GapVertexOrder(k), _KMorseEdgeOrder(d, k, eps)


def delta_preorders(
    d: PseudoDistance, delta: float, eps: float = 0.0
) -> tuple[VertexPreorder, EdgePreorder]:
    """Index order on vertices; only ascending sub-``delta`` edges can flow."""
    if not delta > 0:
        raise ValueError(f"delta must be > 0, got {delta}")
    return IndexVertexOrder(), _DeltaEdgeOrder(d, delta, eps)


def common_neighbor_weights(g: Graph) -> dict[tuple[int, int], float]:
    """Edge similarity = number of common neighbours of the endpoints."""
    nbrs = [set() for _ in range(g.n + 1)]
    for u, v in g.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    return {(u, v): float(len(nbrs[u] & nbrs[v])) for u, v in g.edges}


def unsupervised_preorders(
    g: Graph,
) -> tuple[VertexPreorder, EdgePreorder, dict[tuple[int, int], float]]:
    """Structure-driven preorders: common-neighbour edge similarities.

    Vertices are ranked by (strongest incident similarity, total incident
    similarity, index); isolated vertices get annotation (0, 0).  The
    returned similarity map may contain zeros, so it is a plain edge->weight
    mapping rather than a distance.
    """
    if g.m < 1:
        raise ValueError("unsupervised weighting needs at least one edge")
    sim = common_neighbor_weights(g)
    w1 = [0.0] * (g.n + 1)
    w2 = [0.0] * (g.n + 1)
    for (u, v), x in sim.items():
        for end in (u, v):
            w1[end] = max(w1[end], x)
            w2[end] += x
    keys = {v: (w1[v], w2[v]) for v in g.vertices()}
    return AnnotationVertexOrder(keys), SimilarityEdgeOrder(g, sim, keys), sim


@dataclass(frozen=True)
class MorseInstance:
    """A named choice of preorders: sir, k:<int>, delta:<float>, or unsup."""

    kind: str
    k: int | None = None
    delta: float | None = None
    eps: float = 0.0

    def __post_init__(self):
        if self.kind not in ("sir", "k", "delta", "unsup"):
            raise ValueError(f"unknown instance kind {self.kind!r}")
        if self.kind == "k" and (self.k is None or self.k < 1):
            raise ValueError("k instance needs an integer k >= 1")
        if self.kind == "delta" and (self.delta is None or not self.delta > 0):
            raise ValueError("delta instance needs delta > 0")

    def label(self) -> str:
        if self.kind == "k":
            return f"k:{self.k}"
        if self.kind == "delta":
            return f"delta:{self.delta:g}"
        return self.kind

    def preorders(self, d: PseudoDistance) -> tuple[VertexPreorder, EdgePreorder]:
        if self.kind == "sir":
            return sir_preorders(d, self.eps)
        if self.kind == "k":
            return k_preorders(d, self.k, self.eps)
        if self.kind == "delta":
            return delta_preorders(d, self.delta, self.eps)
        pv, pe, _ = unsupervised_preorders(d.graph)
        return pv, pe


def parse_instance(spec: str, eps: float = 0.0) -> MorseInstance:
    """Parse an instance spec string: ``sir | k:<int> | delta:<float> | unsup``."""
    spec = spec.strip()
    if spec == "sir":
        return MorseInstance("sir", eps=eps)
    if spec == "unsup":
        return MorseInstance("unsup", eps=eps)
    if spec.startswith("k:"):
        return MorseInstance("k", k=int(spec[2:]), eps=eps)
    if spec.startswith("delta:"):
        return MorseInstance("delta", delta=float(spec[6:]), eps=eps)
    raise ValueError(f"unknown instance spec {spec!r}")


def audit_vertex_preorder(pv: VertexPreorder, n: int) -> None:
    """Assert reflexivity, antisymmetric reporting, and transitivity on 1..n."""
    for u in range(1, n + 1):
        if pv.cmp(u, u) != EQUIVALENT:
            raise AssertionError(f"cmp({u},{u}) != EQUIVALENT")
        for v in range(1, n + 1):
            if pv.cmp(u, v) != _FLIP[pv.cmp(v, u)]:
                raise AssertionError(f"cmp({u},{v}) inconsistent with cmp({v},{u})")
    below = lambda a, b: pv.cmp(a, b) in (LESS, EQUIVALENT)
    rng = range(1, n + 1)
    for a in rng:
        for b in rng:
            if not below(a, b):
                continue
            for c in rng:
                if below(b, c) and not below(a, c):
                    raise AssertionError(f"transitivity fails at {a},{b},{c}")


def audit_edge_preorder(pe: EdgePreorder, g: Graph) -> None:
    """Assert reflexivity/consistency/transitivity within each outward star."""
    adj = g.adjacency()
    for v in g.vertices():
        nbrs = adj[v]
        for w in nbrs:
            if pe.cmp(v, w, w) != EQUIVALENT:
                raise AssertionError(f"edge cmp({v};{w},{w}) != EQUIVALENT")
            for t in nbrs:
                if pe.cmp(v, w, t) != _FLIP[pe.cmp(v, t, w)]:
                    raise AssertionError(f"edge cmp at {v}: ({w},{t}) inconsistent")
        below = lambda a, b: pe.cmp(v, a, b) in (LESS, EQUIVALENT)
        for a in nbrs:
            for b in nbrs:
                if not below(a, b):
                    continue
                for c in nbrs:
                    if below(b, c) and not below(a, c):
                        raise AssertionError(f"edge transitivity fails at {v}: {a},{b},{c}")
