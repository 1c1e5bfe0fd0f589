"""Scikit-learn style front end for Morse clustering on precomputed distances."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from .graph import Graph, PseudoDistance
from .preorders import MorseInstance, parse_instance
from .flow import morse_partition

__all__ = ["MorseClustering", "check_distance_matrix"]


def check_distance_matrix(X) -> np.ndarray:
    """Validate a square symmetric non-negative matrix with zero diagonal.

    Zero off-diagonal entries mean "no edge", so sparse graphs are expressed
    by zeros rather than by missing values.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {X.shape}")
    if X.shape[0] < 1:
        raise ValueError("need at least one sample")
    if not np.all(np.isfinite(X)):
        raise ValueError("distance matrix contains non-finite values")
    if np.any(X < 0):
        raise ValueError("distances must be non-negative")
    if np.any(np.diag(X) != 0):
        raise ValueError("the diagonal must be zero")
    if not np.array_equal(X, X.T):
        raise ValueError("distance matrix must be symmetric")
    return X


def distance_from_matrix(X) -> PseudoDistance:
    """Edge-supported distance from a validated matrix (zeros = non-edges)."""
    X = check_distance_matrix(X)
    n = X.shape[0]
    weights = {
        (u, v): float(X[u - 1, v - 1])
        for u in range(1, n + 1)
        for v in range(u + 1, n + 1)
        if X[u - 1, v - 1] != 0.0
    }
    return PseudoDistance(Graph(n, weights.keys()), weights)


class MorseClustering(BaseEstimator, ClusterMixin):
    """Cluster a precomputed distance matrix with a Morse flow.

    Parameters
    ----------
    instance : str, default="sir"
        Which preorder instance to run: ``"sir"``, ``"k:<int>"``,
        ``"delta:<float>"``, or ``"unsup"`` (graph structure only; the
        distance values are ignored beyond defining the edge set).
    epsilon : float, default=0.0
        Relative tolerance for weight-tie detection; 0 compares exactly.

    Attributes
    ----------
    labels_ : ndarray of shape (n_samples,)
        Cluster label of each sample (clusters numbered in canonical order).
    partition_ : Partition
        The clusters as 1-based vertex index sets.
    critical_points_ : ndarray
        0-based indices of the critical (sink) samples, one per cluster.
    flow_ : MorseFlow
        The underlying flow map and critical sets.

    Examples
    --------
    >>> import numpy as np
    >>> X = np.array([[0., 1., 9.], [1., 0., 9.], [9., 9., 0.]])
    >>> MorseClustering().fit_predict(X)
    array([0, 0, 1])
    """

    def __init__(self, instance: str = "sir", epsilon: float = 0.0):
        self.instance = instance
        self.epsilon = epsilon

    def fit(self, X, y=None):
        """Run the flow on a precomputed distance matrix.

        Rows/columns are vertices in input order; that order is also the
        vertex labelling the preorders ascend.
        """
        d = distance_from_matrix(X)
        inst: MorseInstance = parse_instance(self.instance, eps=self.epsilon)
        pv, pe = inst.preorders(d)
        partition, flow, forest = morse_partition(d.graph, pe, pv)
        labels = np.empty(d.n, dtype=int)
        for idx, cluster in enumerate(partition.clusters):
            for v in cluster:
                labels[v - 1] = idx
        self.labels_ = labels
        self.partition_ = partition
        self.flow_ = flow
        self.forest_ = forest
        self.critical_points_ = np.array(sorted(v - 1 for v in flow.critical_vertices))
        self.n_clusters_ = len(partition)
        return self
