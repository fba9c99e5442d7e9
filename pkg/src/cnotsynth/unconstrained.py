"""All-to-all CNOT circuit synthesis.

Triangular operators are synthesized row by row: every parity that ever
appeared on an earlier wire is harvested from the circuit built so far, the
row's residual is decoded as a syndrome instance over those parities, and
one CNOT per chosen parity is inserted at the position where it was live.
General operators go through PLU: two triangular syntheses plus an output
wire relabeling.

Gaussian elimination and the block-partitioned Patel-Markov-Hayes routine
are included as baselines; all ratio benchmarks compare against the latter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .circuits import CnotCircuit, CnotGate, transpose_circuit
from .gf2 import BitMatrix, SingularMatrixError, plu_decompose, transpose
from .syndrome import (
    SyndromeInstance,
    SyndromeSolution,
    derive_seed,
    solve_exact,
    solve_greedy,
    solve_isd,
    solve_tree,
    solve_with_random_bases,
)

__all__ = [
    "ParityEntry",
    "ParityHistory",
    "SynthesisConfig",
    "gaussian_elimination",
    "harvest_parities",
    "pmh",
    "synth_general",
    "synth_lower_triangular",
]

_SOLVERS = ("greedy", "tree", "isd", "exact")


@dataclass(frozen=True)
class SynthesisConfig:
    """Solver selection for the per-row decoding instances.

    ``solver`` is one of greedy | tree | isd | exact; the matching knobs are
    ``tree_width``/``tree_depth``, ``isd_iters`` and ``exact_budget``.
    ``niter_syndrome`` re-solves each instance under that many random bases
    (1 = off, the benchmarked default).
    """

    solver: str = "greedy"
    tree_width: int | None = 8
    tree_depth: int = 1
    isd_iters: int = 100
    exact_budget: int | None = 200_000
    niter_syndrome: int = 1
    seed: int | None = None

    def __post_init__(self):
        if self.solver not in _SOLVERS:
            raise ValueError(f"unknown solver {self.solver!r}; pick from {_SOLVERS}")
        if self.tree_width is not None and self.tree_width < 1:
            raise ValueError("tree_width must be >= 1 or None")
        if self.tree_depth < 1 or self.isd_iters < 1 or self.niter_syndrome < 1:
            raise ValueError("config counts must be positive")
        if self.exact_budget is not None and self.exact_budget < 0:
            raise ValueError("exact_budget must be >= 0 or None")


@dataclass(frozen=True)
class ParityEntry:
    """A parity seen during replay: ``value`` on wire ``qubit``, first live
    once ``position`` gates have been applied."""

    value: int
    qubit: int
    position: int


@dataclass(frozen=True)
class ParityHistory:
    entries: tuple[ParityEntry, ...]

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(e.value for e in self.entries)


def harvest_parities(
    gates: Sequence[CnotGate], n_qubits: int, row: int
) -> ParityHistory:
    """Replay ``gates`` from the identity state and record the first
    appearance of every distinct parity on wires below ``row``.  The
    canonical vectors open the history at position 0."""
    state = [1 << q for q in range(n_qubits)]
    seen = set()
    entries = []
    for q in range(row):
        entries.append(ParityEntry(1 << q, q, 0))
        seen.add(1 << q)
    for pos, g in enumerate(gates, start=1):
        state[g.target] ^= state[g.control]
        v = state[g.target]
        if g.target < row and v not in seen:
            seen.add(v)
            entries.append(ParityEntry(v, g.target, pos))
    return ParityHistory(tuple(entries))


def _solve_instance(
    cfg: SynthesisConfig, inst: SyndromeInstance, seed: int | None
) -> SyndromeSolution:
    if cfg.solver == "isd":
        return solve_isd(inst, cfg.isd_iters, seed=seed)
    if cfg.solver == "greedy":
        base = solve_greedy
    elif cfg.solver == "tree":
        base = lambda i: solve_tree(i, cfg.tree_width, cfg.tree_depth)
    else:  # exact, warm-started so a budget cutoff still returns a solution
        base = lambda i: solve_exact(i, cfg.exact_budget, warm_start=solve_greedy(i))
    if cfg.niter_syndrome > 1:
        return solve_with_random_bases(inst, base, cfg.niter_syndrome, seed)
    return base(inst)


def _check_unit_lower_triangular(l: BitMatrix) -> None:
    if l.n_rows != l.n_cols:
        raise ValueError("triangular synthesis needs a square matrix")
    for i, row in enumerate(l.rows):
        if row >> (i + 1):
            raise ValueError(f"row {i} has entries above the diagonal")
        if not (row >> i) & 1:
            raise ValueError(f"row {i} has a zero diagonal entry")


def synth_lower_triangular(
    l: BitMatrix,
    cfg: SynthesisConfig = SynthesisConfig(),
    instance_log: list | None = None,
) -> CnotCircuit:
    """Synthesize a unit lower triangular operator with oriented CNOTs
    (control < target).

    Row k's residual ``row_k ⊕ e_k`` is decoded over the parities harvested
    from the circuit built so far; each chosen parity becomes a
    CNOT(source → k) inserted where the parity first went live (insertions
    never disturb wires below k, so earlier rows stay synthesized).  When
    ``instance_log`` is a list, (row, instance, solution) triples are
    appended for inspection.
    """
    _check_unit_lower_triangular(l)
    n = l.n_rows
    gates: list[CnotGate] = []
    for k in range(1, n):
        target = l.rows[k] ^ (1 << k)
        if target == 0:
            continue
        history = harvest_parities(gates, n, k)
        inst = SyndromeInstance(n, history.values, target)
        sol = _solve_instance(cfg, inst, derive_seed(cfg.seed, k))
        if instance_log is not None:
            instance_log.append((k, inst, sol))
        chosen = sorted(
            (history.entries[j] for j in sol.support), key=lambda e: e.position
        )
        for offset, entry in enumerate(chosen):
            gates.insert(entry.position + offset, CnotGate(entry.qubit, k))
    return CnotCircuit(n, tuple(gates))


def synth_general(
    a: BitMatrix, cfg: SynthesisConfig = SynthesisConfig()
) -> tuple[CnotCircuit, tuple[int, ...]]:
    """Synthesize any invertible operator up to an output wire relabeling.

    Factor a = P·L·U, synthesize U by transposing a lower-triangular
    synthesis of Uᵀ, concatenate with the L circuit, and return P as the
    relabeling: ``permutation_matrix(perm) @ simulate(circuit) == a``.
    """
    factors = plu_decompose(a)  # raises SingularMatrixError
    circ_u = CnotCircuit(a.n_rows, ())
    if factors.upper.rows != tuple(1 << i for i in range(a.n_rows)):
        lowered = transpose(factors.upper)
        cfg_u = replace(cfg, seed=derive_seed(cfg.seed, 0, 1))
        circ_u = transpose_circuit(synth_lower_triangular(lowered, cfg_u))
    cfg_l = replace(cfg, seed=derive_seed(cfg.seed, 0, 2))
    circ_l = synth_lower_triangular(factors.lower, cfg_l)
    return circ_u.concat(circ_l), factors.perm


def gaussian_elimination(a: BitMatrix) -> CnotCircuit:
    """Plain Gauss-Jordan synthesis: O(n²) gates, the simplest exact
    baseline."""
    if a.n_rows != a.n_cols:
        raise ValueError("need a square matrix")
    n = a.n_rows
    rows = list(a.rows)
    ops: list[tuple[int, int]] = []

    def add(c: int, t: int) -> None:
        rows[t] ^= rows[c]
        ops.append((c, t))

    for j in range(n):
        if not (rows[j] >> j) & 1:
            pivot = next(
                (i for i in range(j + 1, n) if (rows[i] >> j) & 1), None
            )
            if pivot is None:
                raise SingularMatrixError(f"no pivot in column {j}")
            add(pivot, j)
        for i in range(n):
            if i != j and (rows[i] >> j) & 1:
                add(j, i)
    # ops reduce a to I in application order, so the circuit is their reverse
    return CnotCircuit(n, tuple(CnotGate(c, t) for c, t in reversed(ops)))


def _lower_eliminate(rows: list[int], n: int, width: int) -> list[tuple[int, int]]:
    """Reduce below-diagonal entries section by section (pattern
    deduplication + elimination), recording row additions (control, target)."""
    ops: list[tuple[int, int]] = []

    def add(c: int, t: int) -> None:
        rows[t] ^= rows[c]
        ops.append((c, t))

    for start in range(0, n, width):
        stop = min(start + width, n)
        mask = ((1 << stop) - 1) ^ ((1 << start) - 1)
        first_with: dict[int, int] = {}
        for i in range(start, n):
            pattern = rows[i] & mask
            if pattern == 0:
                continue
            if pattern in first_with:
                add(first_with[pattern], i)
            else:
                first_with[pattern] = i
        for j in range(start, stop):
            if not (rows[j] >> j) & 1:
                pivot = next(
                    (i for i in range(j + 1, n) if (rows[i] >> j) & 1), None
                )
                if pivot is None:
                    raise SingularMatrixError(f"no pivot in column {j}")
                add(pivot, j)
            for i in range(j + 1, n):
                if (rows[i] >> j) & 1:
                    add(j, i)
    return ops


def pmh(a: BitMatrix, partition_size: int | None = None) -> CnotCircuit:
    """Patel-Markov-Hayes synthesis: block-partitioned elimination with
    sub-row deduplication, O(n²/log n) gates asymptotically.  The default
    partition is max(1, ⌊log₂(n)/2⌋)."""
    if a.n_rows != a.n_cols:
        raise ValueError("need a square matrix")
    n = a.n_rows
    if partition_size is None:
        partition_size = max(1, int(math.log2(n)) // 2) if n > 1 else 1
    if partition_size < 1:
        raise ValueError("partition_size must be >= 1")
    rows = list(a.rows)
    ops1 = _lower_eliminate(rows, n, partition_size)  # a -> upper triangular
    upper = BitMatrix(n, n, rows)
    rows_t = list(transpose(upper).rows)
    ops2 = _lower_eliminate(rows_t, n, partition_size)  # upperᵀ -> identity
    # a = E(ops1) · E(ops2)ᵀ; transposed elementary ops flip control/target
    gates = [CnotGate(t, c) for c, t in ops2]
    gates.extend(CnotGate(c, t) for c, t in reversed(ops1))
    return CnotCircuit(n, tuple(gates))
