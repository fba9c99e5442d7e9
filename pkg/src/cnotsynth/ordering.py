"""Qubit orderings over a connectivity graph.

A synthesis ordering assigns each node a rank 1..n.  Triangular synthesis
consumes nodes in rank order, so useful orderings keep every prefix (and
suffix) of ranks connected in the device graph — Hamiltonian-path
traversals such as the boustrophedon "snake" on grids have this property.

Also provides the two arrangement objectives used to search for orderings:
a weighted minimum-linear-arrangement sum and an exponential-decay variant,
plus a pair-swap local search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .topology import ConnectivityGraph

__all__ = [
    "QubitOrdering",
    "distance_weights",
    "is_prefix_connected",
    "is_suffix_connected",
    "local_search",
    "natural",
    "objective_exp",
    "objective_minla",
    "snake",
    "symmetry_variants",
    "validate_ordering",
]


@dataclass(frozen=True)
class QubitOrdering:
    """Nodes listed in rank order: ``order[r]`` is the node with rank r+1."""

    order: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.order) != list(range(len(self.order))):
            raise ValueError(f"not a permutation of 0..{len(self.order) - 1}")

    @property
    def n(self) -> int:
        return len(self.order)

    def pi(self, node: int) -> int:
        """Rank of ``node``, 1-based."""
        return self.ranks0[node] + 1

    @property
    def ranks0(self) -> tuple[int, ...]:
        """0-based rank per node (inverse of ``order``)."""
        cached = getattr(self, "_ranks_cache", None)
        if cached is None:
            ranks = [0] * len(self.order)
            for r, node in enumerate(self.order):
                ranks[node] = r
            cached = tuple(ranks)
            object.__setattr__(self, "_ranks_cache", cached)
        return cached

    def reversed(self) -> "QubitOrdering":
        return QubitOrdering(tuple(reversed(self.order)))

    @classmethod
    def from_text(cls, text: str) -> "QubitOrdering":
        return cls(tuple(int(x) for x in text.split()))

    def to_text(self) -> str:
        return " ".join(str(x) for x in self.order) + "\n"


def natural(n: int) -> QubitOrdering:
    return QubitOrdering(tuple(range(n)))


def snake(g: ConnectivityGraph) -> QubitOrdering:
    """Boustrophedon traversal of a grid-family graph: row 0 left-to-right,
    row 1 right-to-left, and so on."""
    if g.grid_shape is None:
        raise ValueError("snake ordering needs a graph with grid metadata")
    n_rows, n_cols = g.grid_shape
    order = []
    for r in range(n_rows):
        cols = range(n_cols) if r % 2 == 0 else range(n_cols - 1, -1, -1)
        order.extend(r * n_cols + c for c in cols)
    return QubitOrdering(tuple(order))


def symmetry_variants(g: ConnectivityGraph) -> list[QubitOrdering]:
    """The distinct snake traversals under the grid's symmetries: 4 starting
    corners x 2 sweep axes, with duplicates removed (a 1 x n line keeps only
    the forward/backward pair)."""
    if g.grid_shape is None:
        raise ValueError("symmetry variants need a graph with grid metadata")
    n_rows, n_cols = g.grid_shape
    seen = set()
    out = []
    for transpose in (False, True):
        rr, cc = (n_cols, n_rows) if transpose else (n_rows, n_cols)
        for flip_r in (False, True):
            for flip_c in (False, True):
                order = []
                for a in range(rr):
                    bs = range(cc) if a % 2 == 0 else range(cc - 1, -1, -1)
                    for b in bs:
                        i = rr - 1 - a if flip_r else a
                        j = cc - 1 - b if flip_c else b
                        r, c = (j, i) if transpose else (i, j)
                        order.append(r * n_cols + c)
                key = tuple(order)
                if key not in seen:
                    seen.add(key)
                    out.append(QubitOrdering(key))
    return out


# -- connectivity requirements -------------------------------------------------


def is_prefix_connected(g: ConnectivityGraph, ordering: QubitOrdering) -> bool:
    """Whether every rank prefix induces a connected subgraph."""
    present = set()
    parent = list(range(g.n_nodes))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    components = 0
    for node in ordering.order:
        present.add(node)
        components += 1
        for v in g.adjacency[node]:
            if v in present:
                ru, rv = find(node), find(v)
                if ru != rv:
                    parent[ru] = rv
                    components -= 1
        if components != 1:
            return False
    return True


def is_suffix_connected(g: ConnectivityGraph, ordering: QubitOrdering) -> bool:
    return is_prefix_connected(g, ordering.reversed())


def validate_ordering(g: ConnectivityGraph, ordering: QubitOrdering) -> None:
    if ordering.n != g.n_nodes:
        raise ValueError("ordering size does not match the graph")
    if not is_prefix_connected(g, ordering):
        raise ValueError("ordering breaks prefix connectivity")
    if not is_suffix_connected(g, ordering):
        raise ValueError("ordering breaks suffix connectivity")


# -- arrangement objectives ----------------------------------------------------


def distance_weights(g: ConnectivityGraph, w: Sequence[float] | None = None) -> np.ndarray:
    """Pair weights derived from hop distances: ``W[u, v] = w[d(u, v)]``,
    defaulting to the distance itself."""
    d = g.distance_matrix()
    if w is None:
        return d.astype(float)
    table = np.asarray([0.0] + list(w), dtype=float)
    if d.max() >= len(table):
        raise ValueError("weight table shorter than graph diameter")
    return table[d]


def objective_minla(ordering: QubitOrdering, weights: np.ndarray) -> float:
    """Weighted linear-arrangement cost: sum over unordered pairs of
    ``weights[u, v] * |rank(u) - rank(v)|``."""
    ranks = np.asarray(ordering.ranks0, dtype=float)
    gaps = np.abs(ranks[:, None] - ranks[None, :])
    return float((np.triu(weights * gaps, k=1)).sum())


def objective_exp(ordering: QubitOrdering, g: ConnectivityGraph) -> float:
    """Exponential-decay arrangement cost: sum over unordered pairs of
    ``d(u, v) * exp(-|rank(u) - rank(v)|)``."""
    ranks = np.asarray(ordering.ranks0, dtype=float)
    gaps = np.abs(ranks[:, None] - ranks[None, :])
    d = g.distance_matrix().astype(float)
    return float(np.triu(d * np.exp(-gaps), k=1).sum())


def local_search(
    g: ConnectivityGraph,
    objective: Callable[[QubitOrdering], float],
    restarts: int = 10,
    seed: np.random.Generator | int | None = None,
) -> QubitOrdering:
    """Pair-swap descent from random permutations.

    Each step applies the cost-minimizing swap among all index pairs
    (ties broken lexicographically) and stops when no swap improves.  The
    best ordering across restarts is returned; note this does not enforce
    prefix connectivity — callers must validate before synthesis use.
    """
    if not isinstance(seed, np.random.Generator):
        seed = np.random.default_rng(seed)
    n = g.n_nodes
    best: QubitOrdering | None = None
    best_cost = float("inf")
    for _ in range(max(1, restarts)):
        order = list(seed.permutation(n))
        cost = objective(QubitOrdering(tuple(order)))
        while True:
            move = None
            move_cost = cost
            for i in range(n - 1):
                for j in range(i + 1, n):
                    order[i], order[j] = order[j], order[i]
                    c = objective(QubitOrdering(tuple(order)))
                    order[i], order[j] = order[j], order[i]
                    if c < move_cost - 1e-12:
                        move, move_cost = (i, j), c
            if move is None:
                break
            i, j = move
            order[i], order[j] = order[j], order[i]
            cost = move_cost
        if cost < best_cost - 1e-12:
            best, best_cost = QubitOrdering(tuple(order)), cost
    assert best is not None
    return best
