"""Seeded benchmark harness.

An :class:`ExperimentSpec` names one of the canned experiments, an
architecture, the sweep points and a master seed; :func:`run_experiment`
expands it into per-operator tasks, runs them (optionally in a process
pool, see the ``CNOTSYNTH_WORKERS`` env var), and aggregates one CSV row
per (point, method) with mean size, min/max/positive saving against the
experiment's baseline method and mean wall time.  Every task derives its
own seed from (master seed, experiment id, point index, operator index),
so rows are reproducible regardless of worker count or scheduling; only
the time column varies between runs.

Experiments
-----------
ratio_pmh     all-to-all, dense operators, syndrome solver vs PMH
input_size    all-to-all at fixed width, sweep over input circuit size
table_exact   constrained synthesis on one architecture
table_perm    same, up to a final qubit permutation
radius        lattice with growing interaction radius
augmentation  base graph plus increasing numbers of random couplings
"""

from __future__ import annotations

import csv
import io
import json
import os
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .circuits import random_operator
from .constrained import ConstrainedConfig, synth_general_constrained
from .gf2 import BitMatrix, random_invertible
from .syndrome import derive_seed
from .topology import (
    ConnectivityGraph,
    augment_random,
    grid,
    grid_with_diagonals,
    line,
    preset,
    preset_names,
    radius_grid,
)
from .unconstrained import SynthesisConfig, gaussian_elimination, pmh, synth_general

EXPERIMENTS = (
    "ratio_pmh",
    "input_size",
    "table_exact",
    "table_perm",
    "radius",
    "augmentation",
)

CSV_COLUMNS = (
    "method",
    "n",
    "mean_size",
    "min_saving",
    "max_saving",
    "positive_fraction",
    "mean_time_s",
    "seed",
)

#: default interaction radii for the ``radius`` sweep; chosen strictly
#: between consecutive lattice distances (1, sqrt2, 2, sqrt5, 3) so float
#: comparisons cannot flip an edge either way
DEFAULT_RADII = (1.0, 1.415, 2.0, 2.237, 3.0)

DEFAULT_EXTRA_EDGES = (0, 5, 10, 20, 40, 80)


def resolve_architecture(name: str) -> ConnectivityGraph | None:
    """Parse an architecture string.

    ``all_to_all`` (alias ``complete``) returns None; ``line:N``,
    ``grid:RxC``, ``grid_diag:RxC`` and ``radius:RxC:r`` build the obvious
    lattices; anything else must be a preset name.
    """
    s = name.strip().lower().replace("-", "_")
    if s in ("all_to_all", "complete", "full"):
        return None
    kind, _, rest = s.partition(":")
    if kind == "line":
        return line(int(rest))
    if kind in ("grid", "grid_diag", "radius"):
        dims, _, rad = rest.partition(":")
        r, c = (int(x) for x in dims.split("x"))
        if kind == "grid":
            return grid(r, c)
        if kind == "grid_diag":
            return grid_with_diagonals(r, c)
        return radius_grid(r, c, float(rad))
    if s in preset_names():
        return preset(s)
    raise ValueError(f"unknown architecture {name!r}")


@dataclass(frozen=True)
class ExperimentSpec:
    experiment: str
    architecture: str = "all_to_all"
    n_values: tuple[int, ...] = ()
    n_operators: int = 20
    config: dict = field(default_factory=dict)
    output: str | None = None
    seed: int = 0

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(
                f"unknown experiment {self.experiment!r}; pick from {EXPERIMENTS}"
            )
        if self.n_operators < 1:
            raise ValueError("n_operators must be >= 1")
        object.__setattr__(self, "n_values", tuple(int(v) for v in self.n_values))
        resolve_architecture(self.architecture)  # raises if unresolvable

    @classmethod
    def from_json(cls, text: str) -> "ExperimentSpec":
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError("experiment spec must be a JSON object")
        known = {
            "experiment",
            "architecture",
            "n_values",
            "n_operators",
            "config",
            "output",
            "seed",
        }
        extra = set(data) - known
        if extra:
            raise ValueError(f"unknown spec fields: {sorted(extra)}")
        if "n_values" in data:
            data["n_values"] = tuple(data["n_values"])
        return cls(**data)

    def to_json(self) -> str:
        out = {
            "experiment": self.experiment,
            "architecture": self.architecture,
            "n_values": list(self.n_values),
            "n_operators": self.n_operators,
            "config": self.config,
            "output": self.output,
            "seed": self.seed,
        }
        return json.dumps(out, indent=2) + "\n"


# -- task expansion -----------------------------------------------------------


def _exp_key(experiment: str) -> int:
    return zlib.crc32(experiment.encode())


def experiment_methods(spec: ExperimentSpec) -> tuple[str, ...]:
    """Methods benchmarked by ``spec``; the first one is the saving baseline."""
    conf = spec.config
    if spec.experiment in ("ratio_pmh", "input_size"):
        return ("pmh", conf.get("solver", "tree" if spec.experiment == "ratio_pmh" else "isd"))
    if spec.experiment in ("table_exact", "table_perm"):
        return ("fast", "syndrome")
    return ("syndrome",)


def _points(spec: ExperimentSpec) -> list[float | int]:
    conf = spec.config
    if spec.experiment == "ratio_pmh":
        pts = list(spec.n_values)
    elif spec.experiment == "input_size":
        pts = list(conf.get("gate_counts", ()))
    elif spec.experiment in ("table_exact", "table_perm"):
        g = resolve_architecture(spec.architecture)
        if g is None:
            raise ValueError("table experiments need a concrete architecture")
        pts = [g.n_nodes]
    elif spec.experiment == "radius":
        pts = list(conf.get("radii", DEFAULT_RADII))
    else:  # augmentation
        pts = list(conf.get("extra_edges", DEFAULT_EXTRA_EDGES))
    if not pts:
        raise ValueError(f"experiment {spec.experiment!r} has an empty point range")
    return pts


def _build_tasks(spec: ExperimentSpec, time_budget_s: float | None) -> list[dict]:
    tasks = []
    for pi, point in enumerate(_points(spec)):
        for method in experiment_methods(spec):
            for op in range(spec.n_operators):
                tasks.append(
                    {
                        "experiment": spec.experiment,
                        "architecture": spec.architecture,
                        "config": dict(spec.config),
                        "seed": spec.seed,
                        "point": point,
                        "point_index": pi,
                        "op": op,
                        "method": method,
                        "time_budget_s": time_budget_s,
                    }
                )
    return tasks


def _task_graph(task: dict, mseed: int) -> ConnectivityGraph | None:
    exp = task["experiment"]
    base = resolve_architecture(task["architecture"])
    if exp in ("ratio_pmh", "input_size"):
        return None
    if exp == "radius":
        if base is None or base.grid_shape is None:
            raise ValueError("radius sweep needs a grid-shaped architecture")
        r, c = base.grid_shape
        return radius_grid(r, c, float(task["point"]))
    if exp == "augmentation":
        if base is None:
            raise ValueError("augmentation needs a concrete base architecture")
        return augment_random(base, int(task["point"]), seed=mseed)
    return base


def _task_operator(task: dict, mseed: int) -> BitMatrix:
    exp = task["experiment"]
    if exp == "ratio_pmh":
        n = int(task["point"])
        return random_operator(n, n * n, seed=mseed)
    if exp == "input_size":
        n = int(task["config"].get("n", 60))
        return random_operator(n, int(task["point"]), seed=mseed)
    g = _task_graph(task, mseed)
    return random_invertible(g.n_nodes, rng=mseed)


def _unconstrained_config(method: str, conf: dict, seed: int) -> SynthesisConfig:
    return SynthesisConfig(
        solver=method,
        tree_width=conf.get("tree_width", 8),
        tree_depth=conf.get("tree_depth", 4 if method == "tree" else 1),
        isd_iters=conf.get("isd_iters", 500),
        exact_budget=conf.get("exact_budget", 200_000),
        niter_syndrome=conf.get("niter_syndrome", 1),
        seed=seed,
    )


def _constrained_config(method: str, conf: dict, mode: str, seed: int) -> ConstrainedConfig:
    fields = {
        k: conf[k]
        for k in ("sp_max", "lc_max", "niter", "niter_syndrome", "use_symmetries", "exact_budget")
        if k in conf
    }
    solver = "fast" if method == "fast" else conf.get("solver", "weighted_greedy")
    return ConstrainedConfig(solver=solver, mode=mode, seed=seed, **fields)


def _run_task(task: dict) -> dict:
    key = _exp_key(task["experiment"])
    mseed = int(derive_seed(task["seed"], key, task["point_index"], task["op"], 0))
    sseed = int(derive_seed(task["seed"], key, task["point_index"], task["op"], 1))
    a = _task_operator(task, mseed)
    g = _task_graph(task, mseed)
    method = task["method"]
    conf = task["config"]
    budget = task["time_budget_s"]
    t0 = time.perf_counter()
    if g is None:
        if method == "pmh":
            size = len(pmh(a))
        elif method == "gauss":
            size = len(gaussian_elimination(a))
        else:
            # output permutations are free on all-to-all hardware (wire
            # relabeling), so the circuit size alone is the cost
            circ, _perm = synth_general(a, _unconstrained_config(method, conf, sseed))
            size = len(circ)
    else:
        mode = "perm" if task["experiment"] == "table_perm" else "exact"
        cfg = _constrained_config(method, conf, mode, sseed)
        circ, _perm = synth_general_constrained(a, g, cfg, time_budget_s=budget)
        size = len(circ)
    elapsed = time.perf_counter() - t0
    return {
        "experiment": task["experiment"],
        "method": method,
        "point": task["point"],
        "op": task["op"],
        "size": size,
        "time_s": elapsed,
        "timeout": bool(budget is not None and elapsed > budget),
        "matrix_seed": mseed,
        "synth_seed": sseed,
    }


# -- aggregation / output -----------------------------------------------------


def _aggregate(spec: ExperimentSpec, records: list[dict]) -> list[dict]:
    methods = experiment_methods(spec)
    baseline = methods[0]
    base_size = {
        (r["point"], r["op"]): r["size"] for r in records if r["method"] == baseline
    }
    rows = []
    for point in _points(spec):
        for method in methods:
            recs = [r for r in records if r["method"] == method and r["point"] == point]
            savings = []
            for r in recs:
                b = base_size[(point, r["op"])]
                savings.append(1.0 - r["size"] / b if b else 0.0)
            rows.append(
                {
                    "method": method,
                    "n": point,
                    "mean_size": round(sum(r["size"] for r in recs) / len(recs), 4),
                    "min_saving": round(min(savings), 4),
                    "max_saving": round(max(savings), 4),
                    "positive_fraction": round(
                        sum(1 for s in savings if s > 0) / len(savings), 4
                    ),
                    "mean_time_s": round(sum(r["time_s"] for r in recs) / len(recs), 6),
                    "seed": spec.seed,
                }
            )
    rows.sort(key=lambda r: (r["n"], r["method"]))
    return rows


def run_experiment(
    spec: ExperimentSpec,
    n_workers: int | None = None,
    time_budget_s: float | None = 600.0,
) -> tuple[list[dict], list[dict]]:
    """Run all tasks of ``spec``; returns (CSV rows, per-operator records)."""
    tasks = _build_tasks(spec, time_budget_s)
    if n_workers is None:
        n_workers = int(os.environ.get("CNOTSYNTH_WORKERS", "1"))
    if n_workers > 1:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            records = list(pool.map(_run_task, tasks))
    else:
        records = [_run_task(t) for t in tasks]
    records.sort(key=lambda r: (r["point"], r["method"], r["op"]))
    return _aggregate(spec, records), records


def _format_point(p) -> str:
    if isinstance(p, float) and p.is_integer():
        return str(int(p))
    return str(p)


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow(
            [
                r["method"],
                _format_point(r["n"]),
                f"{r['mean_size']:.4f}",
                f"{r['min_saving']:.4f}",
                f"{r['max_saving']:.4f}",
                f"{r['positive_fraction']:.4f}",
                f"{r['mean_time_s']:.6f}",
                r["seed"],
            ]
        )
    return buf.getvalue()


def write_records(records: list[dict], path: str) -> None:
    with open(path, "w") as fh:
        for r in records:
            fh.write(json.dumps(r) + "\n")
