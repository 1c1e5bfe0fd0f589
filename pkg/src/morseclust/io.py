"""File formats: edge lists, distance matrices, partitions, and piecewise maps.

* Edge-list file: UTF-8 text, one edge per line ``u<TAB>v<TAB>weight``
  (1-based indices, decimal weight); lines starting with ``#`` are ignored.
* Distance-matrix file: CSV of an n x n symmetric matrix; zero off-diagonal
  entries mean "no edge"; the diagonal must be 0.
* Partition file: JSON ``{"n": int, "clusters": [[int, ...], ...]}`` in
  canonical order.
* Expansive-map file: JSON ``{"points": [[x, y], ...], "tail_slope": s}``.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .graph import Graph, Partition, PseudoDistance
from .monotone import ExpansiveMap

__all__ = [
    "read_edge_list",
    "write_edge_list",
    "read_distance_matrix",
    "write_distance_matrix",
    "read_partition",
    "write_partition",
    "partition_to_dict",
    "partition_from_dict",
    "read_expansive_map",
    "write_expansive_map",
]


class InputFormatError(ValueError):
    """Raised for malformed input files."""


def read_edge_list(path: str | Path) -> PseudoDistance:
    weights: dict[tuple[int, int], float] = {}
    n = 0
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise InputFormatError(f"{path}:{lineno}: expected u<TAB>v<TAB>weight, got {raw!r}")
        try:
            u, v, x = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError as exc:
            raise InputFormatError(f"{path}:{lineno}: {exc}") from exc
        if u == v:
            raise InputFormatError(f"{path}:{lineno}: self-loop on vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in weights:
            raise InputFormatError(f"{path}:{lineno}: duplicate edge {key}")
        weights[key] = x
        n = max(n, u, v)
    if not weights:
        raise InputFormatError(f"{path}: no edges found")
    g = Graph(n, weights.keys())
    return PseudoDistance(g, weights)


def write_edge_list(d: PseudoDistance, path: str | Path) -> None:
    lines = [f"{u}\t{v}\t{x!r}" for (u, v), x in sorted(d.items())]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_distance_matrix(path: str | Path) -> PseudoDistance:
    try:
        mat = np.loadtxt(path, delimiter=",", dtype=float, ndmin=2)
    except ValueError as exc:
        raise InputFormatError(f"{path}: {exc}") from exc
    if mat.shape[0] != mat.shape[1]:
        raise InputFormatError(f"{path}: matrix is {mat.shape[0]}x{mat.shape[1]}, must be square")
    n = mat.shape[0]
    if np.any(np.diag(mat) != 0.0):
        raise InputFormatError(f"{path}: diagonal must be 0")
    if not np.array_equal(mat, mat.T):
        raise InputFormatError(f"{path}: matrix is not symmetric")
    if np.any(mat < 0.0):
        raise InputFormatError(f"{path}: negative entries are not valid weights")
    weights = {
        (u, v): float(mat[u - 1, v - 1])
        for u in range(1, n + 1)
        for v in range(u + 1, n + 1)
        if mat[u - 1, v - 1] != 0.0
    }
    g = Graph(n, weights.keys())
    return PseudoDistance(g, weights)


def write_distance_matrix(d: PseudoDistance, path: str | Path) -> None:
    n = d.n
    mat = np.zeros((n, n))
    for (u, v), x in d.items():
        mat[u - 1, v - 1] = mat[v - 1, u - 1] = x
    np.savetxt(path, mat, delimiter=",", fmt="%.17g")


def partition_to_dict(p: Partition) -> dict:
    return {"n": p.n, "clusters": [list(c) for c in p.clusters]}


def partition_from_dict(obj: dict) -> Partition:
    try:
        return Partition(int(obj["n"]), obj["clusters"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"invalid partition object: {exc}") from exc


def read_partition(path: str | Path) -> Partition:
    return partition_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def write_partition(p: Partition, path: str | Path) -> None:
    Path(path).write_text(json.dumps(partition_to_dict(p)) + "\n", encoding="utf-8")


def read_expansive_map(path: str | Path) -> ExpansiveMap:
    obj = json.loads(Path(path).read_text(encoding="utf-8"))
    try:
        points = [(float(x), float(y)) for x, y in obj["points"]]
        tail = float(obj.get("tail_slope", 1.0))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"invalid expansive-map object: {exc}") from exc
    return ExpansiveMap.from_points(points, tail_slope=tail)


def write_expansive_map(eta: ExpansiveMap, path: str | Path) -> None:
    obj = {"points": [[x, y] for x, y in zip(eta.xs, eta.ys)], "tail_slope": eta.tail_slope}
    Path(path).write_text(json.dumps(obj) + "\n", encoding="utf-8")
