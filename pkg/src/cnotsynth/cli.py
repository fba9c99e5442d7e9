"""Command-line front end: synth / bench / check / gen.

Matrices, circuits, graphs and orderings travel in the plain text formats
of their classes (`BitMatrix.from_text` etc.).  ``synth`` emits the circuit
plus a JSON stats line; ``check`` re-verifies a circuit against a matrix
(and optionally a coupling graph), exiting nonzero on the first failing
check; ``bench`` expands an experiment spec JSON into a CSV.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .bench import ExperimentSpec, resolve_architecture, rows_to_csv, run_experiment, write_records
from .circuits import CnotCircuit, complies_with, random_operator, simulate
from .constrained import ConstrainedConfig, synth_general_constrained
from .gf2 import BitMatrix, mat_mul, permutation_matrix, random_invertible
from .ordering import QubitOrdering
from .topology import ConnectivityGraph, preset_names, preset_ordering
from .unconstrained import SynthesisConfig, gaussian_elimination, pmh, synth_general

CONSTRAINED_SOLVERS = ("weighted_greedy", "fast", "exact")
FULL_SOLVERS = ("greedy", "tree", "isd", "exact", "pmh", "gauss")


def _read(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def _load_graph(spec: str) -> ConnectivityGraph:
    """A --graph argument is a file path if one exists, else an architecture
    string (line:N, grid:RxC, radius:RxC:r, or a preset name)."""
    if os.path.exists(spec):
        return ConnectivityGraph.from_text(_read(spec))
    g = resolve_architecture(spec)
    if g is None:
        raise ValueError("synthesis without --graph is already all-to-all")
    return g


def _emit_stats(stats: dict, path: str | None) -> None:
    lin = json.dumps(stats)
    if path:
        with open(path, "a") as fh:
            fh.write(lin + "\n")
    else:
        print(lin, file=sys.stderr)


def _permutation_tail(perm: tuple[int, ...]) -> CnotCircuit:
    """Circuit whose operator is permutation_matrix(perm) (3 CNOTs/swap)."""
    return gaussian_elimination(permutation_matrix(perm))


# -- synth ---------------------------------------------------------------------


def cmd_synth(args) -> int:
    a = BitMatrix.from_text(_read(args.matrix))
    t0 = time.perf_counter()
    if args.graph:
        g = _load_graph(args.graph)
        ordering = None
        if args.ordering:
            text = _read(args.ordering) if os.path.exists(args.ordering) else args.ordering
            ordering = QubitOrdering.from_text(text)
        elif not os.path.exists(args.graph) and args.graph in preset_names():
            ordering = QubitOrdering(preset_ordering(args.graph))
        cfg = ConstrainedConfig(
            solver=args.solver if args.solver in CONSTRAINED_SOLVERS else "weighted_greedy",
            mode="perm" if args.perm else "exact",
            niter=args.niter,
            niter_syndrome=args.niter_syndrome,
            lc_max=args.lc_max,
            sp_max=args.sp_max,
            use_symmetries=args.use_symmetries,
            exact_budget=args.exact_budget,
            ordering=ordering,
            seed=args.seed,
        )
        circ, perm = synth_general_constrained(a, g, cfg, time_budget_s=args.time_budget)
        solver = cfg.solver
    else:
        solver = args.solver or "greedy"
        if solver == "pmh":
            circ, perm = pmh(a), tuple(range(a.n_rows))
        elif solver == "gauss":
            circ, perm = gaussian_elimination(a), tuple(range(a.n_rows))
        else:
            cfg = SynthesisConfig(
                solver=solver,
                tree_width=args.tree_width,
                tree_depth=args.tree_depth,
                isd_iters=args.isd_iters,
                exact_budget=args.exact_budget,
                niter_syndrome=args.niter_syndrome,
                seed=args.seed,
            )
            circ, perm = synth_general(a, cfg)
            if not args.perm and perm != tuple(range(a.n_rows)):
                circ = circ.concat(_permutation_tail(perm))
                perm = tuple(range(a.n_rows))
    elapsed = time.perf_counter() - t0
    text = circ.to_text()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    identity = perm == tuple(range(a.n_rows))
    _emit_stats(
        {
            "command": "synth",
            "n": a.n_rows,
            "size": len(circ),
            "time_s": round(elapsed, 6),
            "mode": "perm" if args.perm else "exact",
            "solver": solver,
            "constrained": bool(args.graph),
            "perm": None if identity else list(perm),
            "out": args.out,
            "seed": args.seed,
        },
        args.stats,
    )
    return 0


# -- check ---------------------------------------------------------------------


def cmd_check(args) -> int:
    circ = CnotCircuit.from_text(_read(args.circuit))
    a = BitMatrix.from_text(_read(args.matrix))
    checks: list[tuple[str, bool]] = []
    if circ.n_qubits != a.n_rows or a.n_rows != a.n_cols:
        checks.append(("shape", False))
    else:
        checks.append(("shape", True))
        got = simulate(circ)
        if args.perm:
            perm = tuple(int(x) for x in args.perm.split())
            got = mat_mul(permutation_matrix(perm), got)
        checks.append(("simulation", got == a))
        if args.graph:
            g = _load_graph(args.graph)
            checks.append(("compliance", complies_with(circ, g)))
    failing = [name for name, ok in checks if not ok]
    for name, ok in checks:
        print(f"{name}: {'ok' if ok else 'FAIL'}")
    if failing:
        print(f"FAIL: {failing[0]}")
        return 1
    print("PASS")
    return 0


# -- bench ---------------------------------------------------------------------


def cmd_bench(args) -> int:
    spec = ExperimentSpec.from_json(_read(args.spec))
    rows, records = run_experiment(
        spec, n_workers=args.workers, time_budget_s=args.time_budget
    )
    csv_text = rows_to_csv(rows)
    out = args.out or spec.output
    if out:
        with open(out, "w") as fh:
            fh.write(csv_text)
    else:
        sys.stdout.write(csv_text)
    if args.records:
        write_records(records, args.records)
    return 0


# -- gen -----------------------------------------------------------------------


def cmd_gen(args) -> int:
    if args.kind == "operator":
        n = int(args.size)
        if args.gates is None:
            a = random_invertible(n, rng=args.seed)
        else:
            a = random_operator(n, args.gates, seed=args.seed)
        text = a.to_text()
    else:
        g = resolve_architecture(args.size)
        if g is None:
            raise ValueError("all-to-all has no edge list; pick a concrete architecture")
        text = g.to_text()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# -- entry point -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cnotsynth")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("synth", help="synthesize a circuit for a GF(2) matrix")
    s.add_argument("matrix", help="matrix text file")
    s.add_argument("--graph", help="coupling graph file, architecture string, or preset")
    s.add_argument("--out", help="circuit output file (default: stdout)")
    s.add_argument("--stats", help="append the JSON stats line here (default: stderr)")
    s.add_argument("--perm", action="store_true", help="synthesize up to an output permutation")
    s.add_argument("--solver", help=f"{CONSTRAINED_SOLVERS} with --graph, {FULL_SOLVERS} without")
    s.add_argument("--niter", type=int, default=100)
    s.add_argument("--niter-syndrome", type=int, default=1)
    s.add_argument("--lc-max", type=int, default=1)
    s.add_argument("--sp-max", type=int, default=None)
    s.add_argument("--tree-width", type=int, default=8)
    s.add_argument("--tree-depth", type=int, default=1)
    s.add_argument("--isd-iters", type=int, default=500)
    s.add_argument("--exact-budget", type=int, default=100_000)
    s.add_argument("--use-symmetries", action="store_true")
    s.add_argument("--ordering", help="qubit ordering: file or space-separated nodes")
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--time-budget", type=float, default=None, help="seconds per operator")
    s.set_defaults(func=cmd_synth)

    c = sub.add_parser("check", help="verify a circuit against a matrix")
    c.add_argument("circuit")
    c.add_argument("matrix")
    c.add_argument("--graph", help="also check gate compliance with this graph")
    c.add_argument("--perm", help="declared output permutation, space-separated")
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("bench", help="run an experiment spec, emit CSV")
    b.add_argument("spec", help="experiment spec JSON file")
    b.add_argument("--out", help="CSV path (default: spec's output field or stdout)")
    b.add_argument("--records", help="also write per-operator JSON-lines here")
    b.add_argument("--workers", type=int, default=None, help="default: $CNOTSYNTH_WORKERS or 1")
    b.add_argument("--time-budget", type=float, default=600.0, help="seconds per operator")
    b.set_defaults(func=cmd_bench)

    g = sub.add_parser("gen", help="generate a random operator or a graph")
    g.add_argument("kind", choices=("operator", "graph"))
    g.add_argument("size", help="qubit count (operator) or architecture string (graph)")
    g.add_argument("--gates", type=int, default=None, help="sample via a circuit this long")
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
