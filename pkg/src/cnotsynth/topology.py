"""Hardware connectivity graphs: generators, distances, shortest-path
enumeration, and named device presets.

Nodes are integers ``0..n-1``.  Grid-family generators index nodes row-major
(node = row * n_cols + col) and record lattice coordinates so radius-based
couplings and snake orderings can be derived.
"""

from __future__ import annotations

import importlib.resources
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "ConnectivityGraph",
    "all_shortest_paths",
    "augment_random",
    "grid",
    "grid_with_diagonals",
    "line",
    "load_edge_list",
    "preset",
    "preset_names",
    "preset_ordering",
    "radius_grid",
]

PRESET_NAMES = ("rigetti_16q_aspen", "ibm_qx5", "ibm_q20_tokyo")


@dataclass(frozen=True)
class ConnectivityGraph:
    """Undirected connectivity graph with optional lattice metadata."""

    n_nodes: int
    edges: tuple[tuple[int, int], ...]
    coords: tuple[tuple[int, int], ...] | None = None
    grid_shape: tuple[int, int] | None = None

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            if u == v or not (0 <= u < self.n_nodes and 0 <= v < self.n_nodes):
                raise ValueError(f"bad edge ({u}, {v})")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    # -- basic queries ----------------------------------------------------

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        cached = getattr(self, "_adj_cache", None)
        if cached is None:
            adj: list[list[int]] = [[] for _ in range(self.n_nodes)]
            for u, v in self.edges:
                adj[u].append(v)
                adj[v].append(u)
            cached = tuple(tuple(sorted(a)) for a in adj)
            object.__setattr__(self, "_adj_cache", cached)
        return cached

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edge_set()

    def _edge_set(self) -> frozenset:
        cached = getattr(self, "_edge_set_cache", None)
        if cached is None:
            cached = frozenset(self.edges)
            object.__setattr__(self, "_edge_set_cache", cached)
        return cached

    def bfs_distances(self, source: int, within: Sequence[int] | None = None) -> list[int]:
        """BFS hop distances from ``source`` (-1 where unreachable), optionally
        restricted to the subgraph induced by ``within``."""
        allowed = None if within is None else set(within)
        if allowed is not None and source not in allowed:
            raise ValueError("source outside the induced subgraph")
        dist = [-1] * self.n_nodes
        dist[source] = 0
        queue = deque([source])
        adj = self.adjacency
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if dist[v] < 0 and (allowed is None or v in allowed):
                    dist[v] = dist[u] + 1
                    queue.append(v)
        return dist

    def distance_matrix(self) -> np.ndarray:
        cached = getattr(self, "_dist_cache", None)
        if cached is None:
            cached = np.array(
                [self.bfs_distances(s) for s in range(self.n_nodes)], dtype=np.int64
            )
            object.__setattr__(self, "_dist_cache", cached)
        return cached

    def is_connected(self, within: Sequence[int] | None = None) -> bool:
        nodes = list(range(self.n_nodes)) if within is None else list(within)
        if not nodes:
            return True
        dist = self.bfs_distances(nodes[0], within=nodes)
        return all(dist[v] >= 0 for v in nodes)

    # -- text format --------------------------------------------------------

    @classmethod
    def from_text(cls, text: str) -> "ConnectivityGraph":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty edge list")
        n = int(lines[0])
        edges = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise ValueError(f"bad edge line: {ln!r}")
            edges.append((int(parts[0]), int(parts[1])))
        return cls(n, tuple(edges))

    def to_text(self) -> str:
        out = [str(self.n_nodes)]
        out.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(out) + "\n"


def load_edge_list(text: str) -> ConnectivityGraph:
    return ConnectivityGraph.from_text(text)


# -- generators --------------------------------------------------------------


def line(n: int) -> ConnectivityGraph:
    return grid(1, n)


def grid(n_rows: int, n_cols: int) -> ConnectivityGraph:
    """Rectangular lattice with horizontal/vertical couplings."""
    return radius_grid(n_rows, n_cols, 1.0)


def grid_with_diagonals(n_rows: int, n_cols: int) -> ConnectivityGraph:
    """Rectangular lattice with horizontal/vertical and diagonal couplings."""
    return radius_grid(n_rows, n_cols, np.sqrt(2.0))


def radius_grid(n_rows: int, n_cols: int, radius: float) -> ConnectivityGraph:
    """Lattice where nodes within Euclidean distance ``radius`` are coupled."""
    if n_rows < 1 or n_cols < 1:
        raise ValueError("grid dimensions must be positive")
    if radius < 1:
        raise ValueError("radius below 1 yields no edges")
    n = n_rows * n_cols
    coords = tuple((r, c) for r in range(n_rows) for c in range(n_cols))
    r2 = radius * radius + 1e-9
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            dr = coords[i][0] - coords[j][0]
            dc = coords[i][1] - coords[j][1]
            if dr * dr + dc * dc <= r2:
                edges.append((i, j))
    return ConnectivityGraph(n, tuple(edges), coords=coords, grid_shape=(n_rows, n_cols))


def augment_random(
    g: ConnectivityGraph, n_extra: int, seed: np.random.Generator | int | None = None
) -> ConnectivityGraph:
    """Add ``n_extra`` distinct random non-edges to ``g``."""
    if not isinstance(seed, np.random.Generator):
        seed = np.random.default_rng(seed)
    existing = set(g.edges)
    candidates = [
        (u, v)
        for u in range(g.n_nodes)
        for v in range(u + 1, g.n_nodes)
        if (u, v) not in existing
    ]
    if n_extra > len(candidates):
        raise ValueError(f"only {len(candidates)} non-edges available")
    picks = seed.choice(len(candidates), size=n_extra, replace=False)
    new_edges = g.edges + tuple(candidates[int(i)] for i in picks)
    return ConnectivityGraph(g.n_nodes, new_edges, coords=g.coords, grid_shape=g.grid_shape)


# -- shortest paths -----------------------------------------------------------


def all_shortest_paths(
    g: ConnectivityGraph,
    source: int,
    target: int,
    cap: int | None = None,
    within: Sequence[int] | None = None,
) -> list[tuple[int, ...]]:
    """All shortest paths from source to target in lexicographic order,
    truncated to ``cap`` when given.  ``within`` restricts to an induced
    subgraph.  Returns [] when target is unreachable."""
    if source == target:
        return [(source,)]
    dist = g.bfs_distances(source, within=within)
    if dist[target] < 0:
        return []
    allowed = None if within is None else set(within)
    adj = g.adjacency
    out: list[tuple[int, ...]] = []
    stack: list[tuple[int, tuple[int, ...]]] = [(source, (source,))]
    # DFS choosing ascending neighbor indices yields lexicographic order.
    while stack:
        node, path = stack.pop()
        if node == target:
            out.append(path)
            if cap is not None and len(out) >= cap:
                break
            continue
        nxt = [
            v
            for v in adj[node]
            if dist[v] == dist[node] + 1
            and dist[target] >= dist[v]
            and (allowed is None or v in allowed)
        ]
        # push in reverse so the smallest index is explored first
        for v in sorted(nxt, reverse=True):
            stack.append((v, path + (v,)))
    return out


# -- presets ------------------------------------------------------------------


def preset_names() -> tuple[str, ...]:
    return PRESET_NAMES


def _read_data(name: str) -> str:
    ref = importlib.resources.files("cnotsynth").joinpath("data", name)
    return ref.read_text()


def preset(name: str) -> ConnectivityGraph:
    """Load a named device graph shipped with the package."""
    if name not in PRESET_NAMES:
        raise ValueError(f"unknown preset {name!r}; available: {PRESET_NAMES}")
    return load_edge_list(_read_data(name + ".edges"))


def preset_ordering(name: str) -> tuple[int, ...]:
    """Node visitation order (a Hamiltonian path) shipped with each preset."""
    if name not in PRESET_NAMES:
        raise ValueError(f"unknown preset {name!r}; available: {PRESET_NAMES}")
    return tuple(int(x) for x in _read_data(name + ".order").split())
