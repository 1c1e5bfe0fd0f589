"""Command-line front door: cluster, flow, transform, check, eval.

Outputs are canonical and deterministic: identical inputs and options give
byte-identical output.  JSON outputs embed the run configuration that
produced them.  Exit codes: 0 success (or axiom pass), 1 axiom-check
failure, 2 usage or input errors.  The environment variable MORSE_THREADS
caps internal parallelism; the current implementation is sequential, so any
cap is honoured trivially.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click
import numpy as np

from . import io as mio
from .axioms import (
    check_consistency,
    check_monotonic_consistency,
    check_scale_invariance,
    delta_richness_witness,
    enumerate_richness,
    morse_clusterer,
    random_complete_distance,
    sir_richness_witness,
)
from .benchmark import benchmark_sweep
from .flow import morse_partition
from .graph import PseudoDistance
from .monotone import apply_monotonic
from .preorders import MorseInstance, parse_instance

AXIOM_NAMES = ("scale-invariance", "richness", "consistency", "monotonic-consistency")


class InputError(click.ClickException):
    exit_code = 2


def _check_threads_env() -> None:
    raw = os.environ.get("MORSE_THREADS")
    if raw is not None:
        try:
            if int(raw) < 1:
                raise ValueError
        except ValueError:
            raise InputError(f"MORSE_THREADS must be a positive integer, got {raw!r}")


def _load_input(dist: str | None, edges: str | None, fmt: str) -> tuple[PseudoDistance, dict]:
    if (dist is None) == (edges is None):
        raise InputError("give exactly one of --dist or --edges")
    path = Path(dist or edges)
    if not path.exists():
        raise InputError(f"input file {path} does not exist")
    if fmt == "auto":
        if path.suffix == ".csv":
            fmt = "matrix"
        elif path.suffix == ".tsv":
            fmt = "edges"
        else:
            fmt = "matrix" if dist else "edges"
    try:
        d = mio.read_distance_matrix(path) if fmt == "matrix" else mio.read_edge_list(path)
    except (mio.InputFormatError, ValueError) as exc:
        raise InputError(str(exc))
    return d, {"path": str(path), "format": fmt}


def _emit_json(payload: dict) -> None:
    click.echo(json.dumps(payload, sort_keys=True))


@click.group()
def main() -> None:
    """Morse clustering over weighted graphs, plus an axiom-check harness."""
    _check_threads_env()


_input_options = [
    click.option("--dist", type=str, default=None, help="Distance-matrix CSV (0 = no edge)."),
    click.option("--edges", type=str, default=None, help="Edge-list TSV: u<TAB>v<TAB>weight."),
    click.option(
        "--format",
        "fmt",
        type=click.Choice(["auto", "matrix", "edges"]),
        default="auto",
        help="Override input auto-detection by extension.",
    ),
    click.option("--instance", default="sir", help="sir | k:<int> | delta:<float> | unsup."),
    click.option("--epsilon", type=float, default=0.0, help="Relative weight-tie tolerance."),
]


def _with_input_options(fn):
    for opt in reversed(_input_options):
        fn = opt(fn)
    return fn


def _instance_or_die(spec: str, epsilon: float) -> MorseInstance:
    try:
        return parse_instance(spec, eps=epsilon)
    except ValueError as exc:
        raise InputError(str(exc))


@main.command()
@_with_input_options
def cluster(dist, edges, fmt, instance, epsilon) -> None:
    """Partition the input graph; prints partition JSON."""
    d, source = _load_input(dist, edges, fmt)
    inst = _instance_or_die(instance, epsilon)
    try:
        pv, pe = inst.preorders(d)
    except ValueError as exc:
        raise InputError(str(exc))
    partition, flow, _ = morse_partition(d.graph, pe, pv)
    _emit_json(
        {
            "n": partition.n,
            "clusters": [list(c) for c in partition.clusters],
            "critical_vertices": sorted(flow.critical_vertices),
            "config": {
                "command": "cluster",
                "instance": inst.label(),
                "epsilon": epsilon,
                "input": source,
            },
        }
    )


@main.command()
@_with_input_options
@click.option("--forest-out", type=str, default=None, help="Write a JSON basin dump here.")
def flow(dist, edges, fmt, instance, epsilon, forest_out) -> None:
    """Print the flow map as TSV: v, phi(v), is_critical."""
    d, source = _load_input(dist, edges, fmt)
    inst = _instance_or_die(instance, epsilon)
    try:
        pv, pe = inst.preorders(d)
    except ValueError as exc:
        raise InputError(str(exc))
    _, fl, forest = morse_partition(d.graph, pe, pv)
    for v in d.graph.vertices():
        click.echo(f"{v}\t{fl.phi[v]}\t{int(fl.phi[v] == v)}")
    if forest_out:
        payload = {
            "basins": {str(r): sorted(vs) for r, vs in forest.basins.items()},
            "config": {
                "command": "flow",
                "instance": inst.label(),
                "epsilon": epsilon,
                "input": source,
            },
        }
        Path(forest_out).write_text(json.dumps(payload, sort_keys=True) + "\n", encoding="utf-8")


@main.command()
@click.option("--dist", type=str, default=None, help="Distance-matrix CSV.")
@click.option("--edges", type=str, default=None, help="Edge-list TSV.")
@click.option("--format", "fmt", type=click.Choice(["auto", "matrix", "edges"]), default="auto")
@click.option("--partition", "partition_path", required=True, type=str, help="Partition JSON.")
@click.option("--map", "map_path", required=True, type=str, help="Expansive-map JSON.")
@click.option("--out", required=True, type=str, help="Output path (.csv matrix or .tsv edges).")
def transform(dist, edges, fmt, partition_path, map_path, out) -> None:
    """Apply a partition-monotonic transformation and write the new distance."""
    d, _ = _load_input(dist, edges, fmt)
    try:
        p = mio.read_partition(partition_path)
        eta = mio.read_expansive_map(map_path)
        dprime = apply_monotonic(d, p, eta)
    except (mio.InputFormatError, ValueError) as exc:
        raise InputError(str(exc))
    out_path = Path(out)
    if out_path.suffix == ".csv":
        mio.write_distance_matrix(dprime, out_path)
    else:
        mio.write_edge_list(dprime, out_path)
    click.echo(f"wrote {out_path}")


@main.command()
@click.option("--axiom", required=True, type=click.Choice(AXIOM_NAMES))
@click.option("--instance", default="sir", help="sir | k:<int> | delta:<float>.")
@click.option("--n", "size", type=int, default=6, help="Vertex count for generated inputs.")
@click.option("--trials", type=int, default=100)
@click.option("--seed", type=int, default=0)
@click.option("--epsilon", type=float, default=0.0)
def check(axiom, instance, size, trials, seed, epsilon) -> None:
    """Run one axiom check on seeded random inputs; JSON report; exit 1 on fail."""
    inst = _instance_or_die(instance, epsilon)
    if inst.kind == "unsup":
        raise InputError("axiom checks run the distance-driven instances only")
    F = morse_clusterer(inst)
    rng = np.random.default_rng(seed)
    if axiom == "richness":
        if size > 9:
            raise InputError("richness enumeration is guarded at n <= 9")
        witness = (
            (lambda p: delta_richness_witness(p, inst.delta))
            if inst.kind == "delta"
            else sir_richness_witness
        )
        report = enumerate_richness(F, size, witness)
    elif axiom == "scale-invariance":
        report = None
        for _ in range(max(1, trials // 10)):
            d = random_complete_distance(size, rng)
            report = check_scale_invariance(F, d, [0.1, 3.0, 1000.0])
            if not report.passed:
                break
    elif axiom == "consistency":
        d = random_complete_distance(size, rng)
        report = check_consistency(F, d, trials, seed)
    else:
        d = random_complete_distance(size, rng)
        report = check_monotonic_consistency(
            F, d, trials, seed, require_flow_equality=inst.kind in ("sir", "k")
        )
    payload = {
        "axiom": report.axiom,
        "function": report.function,
        "verdict": report.verdict,
        "trials": report.trials,
        "counterexample": report.counterexample,
        "config": {
            "command": "check",
            "axiom": axiom,
            "instance": inst.label(),
            "n": size,
            "trials": trials,
            "seed": seed,
            "epsilon": epsilon,
        },
    }
    _emit_json(payload)
    if not report.passed:
        sys.exit(1)


def _parse_seed_range(spec: str) -> list[int]:
    if ".." in spec:
        a, b = spec.split("..", 1)
        try:
            lo, hi = int(a), int(b)
        except ValueError:
            raise InputError(f"bad seed range {spec!r}")
        if hi < lo:
            raise InputError(f"empty seed range {spec!r}")
        return list(range(lo, hi + 1))
    try:
        return [int(spec)]
    except ValueError:
        raise InputError(f"bad seed spec {spec!r}")


@main.command(name="eval")
@click.option("--n", "size", type=int, default=300)
@click.option("--communities", type=int, default=5)
@click.option("--degree", type=float, default=12.0)
@click.option("--mu", "mus", type=float, multiple=True, required=True)
@click.option("--seeds", default="0..19", help="Seed range a..b or a single seed.")
@click.option("--instance", default="unsup")
def eval_cmd(size, communities, degree, mus, seeds, instance) -> None:
    """Planted-partition benchmark sweep; TSV: mu, mean_nmi, std."""
    inst = _instance_or_die(instance, 0.0)
    if inst.kind != "unsup":
        raise InputError("benchmarks run the unsup instance")
    seed_list = _parse_seed_range(seeds)
    try:
        rows = benchmark_sweep(
            inst, list(mus), seed_list, n=size, communities=communities, degree=degree
        )
    except ValueError as exc:
        raise InputError(str(exc))
    for r in rows:
        click.echo(f"{r['mu']:g}\t{r['mean_nmi']:.6f}\t{r['std_nmi']:.6f}")


if __name__ == "__main__":
    main()
