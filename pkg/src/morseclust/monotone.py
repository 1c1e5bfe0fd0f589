"""Expansive maps and partition-monotonic transformations of distances.

An expansive map here is a continuous piecewise-linear bijection of
[0, inf) fixing 0 whose segment slopes are all >= 1, so it never shrinks
gaps: eta(x) - eta(y) >= x - y for x >= y.  Its inverse is contractive.
A partition-monotonic transformation contracts intra-cluster distances by
the inverse map and expands inter-cluster distances by the map itself,
with one global map controlling both rates.

A differentiable map with slope >= 1 everywhere is also expansive, but it
enters this module only through piecewise-linear discretisation at the
finitely many distances it will ever be applied to (which is exact for the
transformation's purposes).
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .graph import Partition, PseudoDistance

__all__ = [
    "ExpansiveMap",
    "MonotonicWitness",
    "compose",
    "apply_monotonic",
    "detect_monotonic",
    "aligned_triples",
    "is_metric",
    "metric_constants",
    "MetricConstants",
]


class ExpansiveMap:
    """Piecewise-linear expansive map given by breakpoints and a tail slope.

    Breakpoints ``(xs[i], ys[i])`` start at (0, 0), have strictly increasing
    xs, and every segment slope (including ``tail_slope`` beyond the last
    breakpoint) is at least 1.  The map is a bijection of [0, inf) and
    carries an exact inverse.
    """

    __slots__ = ("xs", "ys", "tail_slope")

    def __init__(
        self,
        xs: Sequence[float],
        ys: Sequence[float],
        tail_slope: float = 1.0,
        slope_tol: float = 0.0,
    ):
        xs = tuple(float(x) for x in xs)
        ys = tuple(float(y) for y in ys)
        if len(xs) != len(ys) or not xs:
            raise ValueError("breakpoints need matching non-empty xs and ys")
        if xs[0] != 0.0 or ys[0] != 0.0:
            raise ValueError("an expansive map on [0, inf) must fix 0")
        floor = 1.0 - slope_tol
        for i in range(len(xs) - 1):
            run = xs[i + 1] - xs[i]
            if run <= 0:
                raise ValueError(f"breakpoint xs must be strictly increasing (index {i})")
            if ys[i + 1] - ys[i] < floor * run:
                raise ValueError(
                    f"segment {i} has slope {(ys[i + 1] - ys[i]) / run} < 1; not expansive"
                )
        if tail_slope < floor:
            raise ValueError(f"tail slope {tail_slope} < 1; not expansive")
        self.xs = xs
        self.ys = ys
        self.tail_slope = float(tail_slope)

    @staticmethod
    def identity() -> "ExpansiveMap":
        return ExpansiveMap([0.0], [0.0], tail_slope=1.0)

    @staticmethod
    def linear(alpha: float) -> "ExpansiveMap":
        """eta(x) = alpha * x for alpha >= 1."""
        return ExpansiveMap([0.0], [0.0], tail_slope=alpha)

    @staticmethod
    def step(d1: float, d2: float, alpha: float) -> "ExpansiveMap":
        """Identity below d1, slope alpha on [d1, d2], slope 1 above d2."""
        if not (0 <= d1 < d2):
            raise ValueError(f"need 0 <= d1 < d2, got {d1}, {d2}")
        if alpha < 1:
            raise ValueError(f"step slope must be >= 1, got {alpha}")
        return ExpansiveMap(
            [0.0, d1, d2], [0.0, d1, alpha * (d2 - d1) + d1], tail_slope=1.0
        )

    @staticmethod
    def from_points(
        points: Iterable[tuple[float, float]],
        tail_slope: float = 1.0,
        slope_tol: float = 0.0,
    ) -> "ExpansiveMap":
        """Interpolation through (x, y) points; (0, 0) is added if absent."""
        pts = sorted({(float(x), float(y)) for x, y in points})
        if not pts or pts[0][0] > 0.0:
            pts.insert(0, (0.0, 0.0))
        for (x1, _), (x2, _) in zip(pts, pts[1:]):
            if x1 == x2:
                raise ValueError(f"two different values at x={x1}; not a function")
        return ExpansiveMap(
            [x for x, _ in pts], [y for _, y in pts], tail_slope, slope_tol
        )

    @staticmethod
    def from_samples(
        fn: Callable[[float], float],
        xs: Iterable[float],
        tail_slope: float = 1.0,
        slope_tol: float = 0.0,
    ) -> "ExpansiveMap":
        """Discretise a (nonlinear) expansive function at the given inputs."""
        return ExpansiveMap.from_points(
            [(x, fn(x)) for x in xs], tail_slope, slope_tol
        )

    def __call__(self, x: float) -> float:
        if x < 0:
            raise ValueError(f"expansive maps are defined on [0, inf), got {x}")
        xs, ys = self.xs, self.ys
        i = bisect_right(xs, x) - 1
        if xs[i] == x:
            return ys[i]
        if i == len(xs) - 1:
            return ys[i] + self.tail_slope * (x - xs[i])
        t = (x - xs[i]) / (xs[i + 1] - xs[i])
        return ys[i] + t * (ys[i + 1] - ys[i])

    def inverse(self, y: float) -> float:
        if y < 0:
            raise ValueError(f"the inverse is defined on [0, inf), got {y}")
        xs, ys = self.xs, self.ys
        i = bisect_right(ys, y) - 1
        if ys[i] == y:
            return xs[i]
        if i == len(ys) - 1:
            return xs[i] + (y - ys[i]) / self.tail_slope
        t = (y - ys[i]) / (ys[i + 1] - ys[i])
        return xs[i] + t * (xs[i + 1] - xs[i])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExpansiveMap)
            and self.xs == other.xs
            and self.ys == other.ys
            and self.tail_slope == other.tail_slope
        )

    def __repr__(self):
        pts = ", ".join(f"({x:g},{y:g})" for x, y in zip(self.xs, self.ys))
        return f"ExpansiveMap([{pts}], tail={self.tail_slope:g})"


def compose(eta1: ExpansiveMap, eta2: ExpansiveMap) -> "ExpansiveMap":
    """The map x -> eta2(eta1(x)), again expansive.

    Breakpoints are eta1's breakpoints merged with the eta1-preimages of
    eta2's, so the composite is linear on every remaining segment.
    """
    xs = sorted({*eta1.xs, *(eta1.inverse(x) for x in eta2.xs)})
    ys = [eta2(eta1(x)) for x in xs]
    return ExpansiveMap(xs, ys, tail_slope=eta1.tail_slope * eta2.tail_slope,
                        slope_tol=1e-12)


def apply_monotonic(d: PseudoDistance, p: Partition, eta: ExpansiveMap) -> PseudoDistance:
    """Contract intra-cluster weights by the inverse map, expand inter by the map.

    The support is unchanged (the map is a bijection fixing only 0).
    """
    if p.n != d.n:
        raise ValueError(f"partition is over {p.n} vertices, distance over {d.n}")
    lab = p.labels()
    return PseudoDistance(
        d.graph,
        {
            (u, v): (eta.inverse(x) if lab[u] == lab[v] else eta(x))
            for (u, v), x in d.items()
        },
    )


@dataclass(frozen=True)
class MonotonicWitness:
    """Outcome of testing whether d' is a monotonic transformation of d.

    ``verdict`` is one of:

    * ``"valid"`` -- ``eta`` is a piecewise-linear expansive map through all
      the constraint points and reproduces d' exactly;
    * ``"conflict"`` -- two pairs force different outputs at the same input,
      beyond evaluation round-off (``detail = (x, y1, y2)``);
    * ``"slope_violation"`` -- some consecutive pair of constraint points has
      slope < 1 (``detail = index of the left point``).
    """

    points: tuple[tuple[float, float], ...]
    verdict: str
    detail: tuple | int | None = None
    eta: ExpansiveMap | None = None

    @property
    def valid(self) -> bool:
        return self.verdict == "valid"


def detect_monotonic(
    d: PseudoDistance,
    dprime: PseudoDistance,
    p: Partition,
    slope_tol: float = 1e-9,
    exact: bool = False,
) -> MonotonicWitness:
    """Decide whether ``dprime`` is a ``p``-monotonic transformation of ``d``.

    Collects one constraint point per pair -- (new, old) for intra-cluster
    pairs and (old, new) for inter-cluster pairs, both on the graph of the
    would-be map -- plus (0, 0), then checks that their linear interpolation
    is a well-defined expansive map.  With ``exact=True`` slopes are compared
    in exact rational arithmetic instead of allowing ``slope_tol`` slack.
    """
    if d.graph != dprime.graph:
        raise ValueError("distances have different supports")
    if p.n != d.n:
        raise ValueError(f"partition is over {p.n} vertices, distance over {d.n}")
    lab = p.labels()
    pts = {(0.0, 0.0)}
    for (u, v), x in d.items():
        xp = dprime.d(u, v)
        if lab[u] == lab[v]:
            pts.add((xp, x))
        else:
            pts.add((x, xp))
    raw = sorted(pts)
    # two pairs pinned to the same input must agree on the output; outputs
    # within the tolerance are the same value up to evaluation round-off
    # (a forward and an inverse evaluation of the same map can disagree by
    # an ulp) and coalesce
    points_list: list[tuple[float, float]] = []
    for x, y in raw:
        if points_list and points_list[-1][0] == x:
            y0 = points_list[-1][1]
            same = y == y0 if exact else abs(y - y0) <= slope_tol * max(1.0, abs(y0))
            if not same:
                return MonotonicWitness(tuple(raw), "conflict", (x, y0, y))
            continue
        points_list.append((x, y))
    points = tuple(points_list)
    for i, ((x1, y1), (x2, y2)) in enumerate(zip(points, points[1:])):
        if exact:
            ok = Fraction(y2) - Fraction(y1) >= Fraction(x2) - Fraction(x1)
        else:
            ok = y2 - y1 >= (1.0 - slope_tol) * (x2 - x1)
        if not ok:
            return MonotonicWitness(points, "slope_violation", i)
    eta = ExpansiveMap(
        [x for x, _ in points],
        [y for _, y in points],
        tail_slope=1.0,
        slope_tol=0.0 if exact else slope_tol,
    )
    return MonotonicWitness(points, "valid", None, eta)


def aligned_triples(d: PseudoDistance) -> list[tuple[int, int, int]]:
    """Ordered distinct triples (i, j, k) with d(i,k) = d(i,j) + d(j,k) exactly."""
    if not d.is_complete():
        raise ValueError("aligned-triple scan is defined for complete graphs only")
    n = d.n
    out = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if j == i:
                continue
            for k in range(1, n + 1):
                if k == i or k == j:
                    continue
                if d.d(i, k) == d.d(i, j) + d.d(j, k):
                    out.append((i, j, k))
    return out


def is_metric(d: PseudoDistance, tol: float = 0.0) -> bool:
    """Exhaustive triangle-inequality scan (complete graphs only)."""
    if not d.is_complete():
        raise ValueError("metric check is defined for complete graphs only")
    n = d.n
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if j == i:
                continue
            for k in range(1, n + 1):
                if k == i or k == j:
                    continue
                if d.d(i, k) > d.d(i, j) + d.d(j, k) + tol:
                    return False
    return True


@dataclass(frozen=True)
class MetricConstants:
    """Largest admissible linear rates for metric-preserving transformations.

    ``c_partition`` bounds the rates for the given partition (the linear map
    with slope s < c_partition applied monotonically keeps the metric);
    ``c_universal`` is the partition-independent bound.  An empty minimum is
    +inf.  The minimising triples (i, j, k) are kept for diagnostics.
    """

    c_partition: float
    c_universal: float
    partition_triple: tuple[int, int, int] | None
    universal_triple: tuple[int, int, int] | None

    def __iter__(self):
        return iter((self.c_partition, self.c_universal))


def metric_constants(d: PseudoDistance, p: Partition) -> MetricConstants:
    """Critical rates min sqrt(d(i,j) / (d(i,k) - d(j,k))) over qualifying triples.

    Requires a genuine metric with no aligned triple; both constants are then
    strictly greater than 1, and c_universal <= c_partition.
    """
    if not is_metric(d):
        raise ValueError("input does not satisfy the triangle inequality")
    if aligned_triples(d):
        raise ValueError("input has an aligned triple; the constants degenerate to 1")
    if p.n != d.n:
        raise ValueError(f"partition is over {p.n} vertices, distance over {d.n}")
    lab = p.labels()
    n = d.n
    c_p, c_u = math.inf, math.inf
    t_p = t_u = None
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if j == i:
                continue
            for k in range(1, n + 1):
                if k == i or k == j:
                    continue
                gap = d.d(i, k) - d.d(j, k)
                if gap <= 0:
                    continue
                val = math.sqrt(d.d(i, j) / gap)
                if val < c_u:
                    c_u, t_u = val, (i, j, k)
                if lab[i] == lab[j] and lab[i] != lab[k] and val < c_p:
                    c_p, t_p = val, (i, j, k)
    return MetricConstants(c_p, c_u, t_p, t_u)
