"""Morse clustering on weighted graphs, with an executable axiom harness."""

from .graph import (
    ExtremalStats,
    Graph,
    Partition,
    PseudoDistance,
    complete_graph,
    connected_components,
    extremal_stats,
    is_connected_partition,
    is_refinement,
    scale,
)
from .preorders import (
    MorseInstance,
    delta_preorders,
    k_preorders,
    parse_instance,
    sir_preorders,
    unsupervised_preorders,
)
from .flow import (
    MorseFlow,
    MorseForest,
    check_refinement_lemma,
    iterate_flow,
    morse_flow,
    morse_forest,
    morse_partition,
    stabilization_steps,
)
from .monotone import (
    ExpansiveMap,
    MonotonicWitness,
    aligned_triples,
    apply_monotonic,
    compose,
    detect_monotonic,
    is_metric,
    metric_constants,
)
from .estimator import MorseClustering

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
    "MorseInstance",
    "parse_instance",
    "sir_preorders",
    "k_preorders",
    "delta_preorders",
    "unsupervised_preorders",
    "MorseFlow",
    "MorseForest",
    "morse_flow",
    "morse_forest",
    "morse_partition",
    "iterate_flow",
    "stabilization_steps",
    "check_refinement_lemma",
    "ExpansiveMap",
    "MonotonicWitness",
    "compose",
    "apply_monotonic",
    "detect_monotonic",
    "aligned_triples",
    "is_metric",
    "metric_constants",
    "MorseClustering",
]

__version__ = "0.1.0"
