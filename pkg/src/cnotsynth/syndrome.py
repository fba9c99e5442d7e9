"""Syndrome decoding over GF(2).

An instance asks for a low-weight (or low-cost) subset of parity columns
XOR-ing to a target vector: minimize wt(x) (or c.x) subject to H x = s.
Triangular circuit synthesis produces one such instance per matrix row, so
these solvers are the search core of the whole package.

Solvers: plain greedy, bounded look-ahead tree search, information-set
decoding (random change of basis + greedy, best of many trials), an exact
branch-and-bound, and a cost-weighted greedy for restricted connectivity.

Vectors are bit-packed ints (bit i = coordinate i).  Bulk scoring uses
numpy on uint64-packed columns; the ISD trial loop is JIT-compiled with
numba when available (pure-numpy/Python fallback otherwise).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .gf2 import BitMatrix

try:  # pragma: no cover - exercised indirectly
    import numba

    _HAVE_NUMBA = True
except Exception:  # pragma: no cover
    _HAVE_NUMBA = False

__all__ = [
    "BudgetExhaustedError",
    "GeneratorMatrix",
    "InfeasibleError",
    "ParityGraph",
    "SyndromeInstance",
    "SyndromeSolution",
    "derive_seed",
    "generator_from_parities",
    "parity_graph",
    "solution_is_valid",
    "solve_exact",
    "solve_greedy",
    "solve_isd",
    "solve_tree",
    "solve_weighted_greedy",
    "solve_with_random_bases",
]


class InfeasibleError(ValueError):
    """The target is not reachable from the instance's columns."""


class BudgetExhaustedError(RuntimeError):
    """Exact search ran out of budget before finding any solution."""

    def __init__(self, message: str, incumbent: "SyndromeSolution | None" = None):
        super().__init__(message)
        self.incumbent = incumbent


@dataclass(frozen=True)
class SyndromeInstance:
    """Decoding instance: columns and target are ints over ``n`` coordinates.

    ``costs`` is None for plain (Hamming-weight) instances; otherwise one
    positive cost per column.
    """

    n: int
    columns: tuple[int, ...]
    target: int
    costs: tuple[float, ...] | None = None

    def __post_init__(self):
        mask = (1 << self.n) - 1
        if any(c & ~mask for c in self.columns) or self.target & ~mask:
            raise ValueError("column/target bits outside coordinate range")
        if self.costs is not None:
            if len(self.costs) != len(self.columns):
                raise ValueError("one cost per column required")
            if any(c <= 0 for c in self.costs):
                raise ValueError("costs must be positive")

    @property
    def m(self) -> int:
        return len(self.columns)


@dataclass(frozen=True)
class SyndromeSolution:
    """Chosen column indices and their weight (cardinality, or total cost on
    weighted instances).  ``proven_optimal`` is set only by a completed exact
    search."""

    support: tuple[int, ...]
    weight: float
    proven_optimal: bool = False


def _solution_weight(inst: SyndromeInstance, support: Iterable[int]) -> float:
    if inst.costs is None:
        return float(len(tuple(support)))
    return float(sum(inst.costs[j] for j in support))


def _make_solution(
    inst: SyndromeInstance, support: Iterable[int], proven: bool = False
) -> SyndromeSolution:
    sup = tuple(sorted(set(support)))
    return SyndromeSolution(sup, _solution_weight(inst, sup), proven)


def solution_is_valid(inst: SyndromeInstance, sol: SyndromeSolution) -> bool:
    acc = 0
    for j in sol.support:
        acc ^= inst.columns[j]
    return acc == inst.target


def derive_seed(seed: int | None, *key: int) -> int | None:
    """Deterministic child seed for a labeled subtask (row index, phase, ...);
    None stays None (fully random)."""
    if seed is None:
        return None
    ss = np.random.SeedSequence(entropy=seed, spawn_key=tuple(key))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


# -- packed-column helpers -----------------------------------------------------


def _n_words(n_bits: int) -> int:
    return max(1, (n_bits + 63) // 64)


def _pack_ints(vals: Sequence[int], n_bits: int) -> np.ndarray:
    w = _n_words(n_bits)
    if not vals:
        return np.zeros((0, w), dtype=np.uint64)
    buf = b"".join(v.to_bytes(w * 8, "little") for v in vals)
    return np.frombuffer(buf, dtype="<u8").reshape(len(vals), w).astype(np.uint64)

def _pack_one(v: int, n_bits: int) -> np.ndarray:
    return _pack_ints([v], n_bits)[0]


def _hamming_to(packed: np.ndarray, v: int, n_bits: int) -> np.ndarray:
    """Hamming distances from every packed row to the int vector ``v``."""
    row = _pack_one(v, n_bits)
    return np.bitwise_count(packed ^ row).sum(axis=1, dtype=np.int64)


def _canonical_decomposition(
    inst: SyndromeInstance, s: int, canon: dict[int, int]
) -> list[int]:
    picks = []
    while s:
        lsb = s & -s
        bit = lsb.bit_length() - 1
        if bit not in canon:
            raise InfeasibleError(f"no canonical column for coordinate {bit}")
        picks.append(canon[bit])
        s ^= lsb
    return picks


def _canonical_index(inst: SyndromeInstance) -> dict[int, int]:
    """bit -> index of a canonical column for that coordinate (cheapest, then
    earliest)."""
    canon: dict[int, int] = {}
    for j, col in enumerate(inst.columns):
        if col and col & (col - 1) == 0:
            bit = col.bit_length() - 1
            if bit not in canon or (
                inst.costs is not None and inst.costs[j] < inst.costs[canon[bit]]
            ):
                canon[bit] = j
    return canon


# -- greedy ---------------------------------------------------------------------


def solve_greedy(inst: SyndromeInstance) -> SyndromeSolution:
    """Repeatedly add the column minimizing wt(s ^ v); ties at the lowest
    column index.  Falls back to a canonical decomposition of the residual if
    no column strictly decreases the weight."""
    s = inst.target
    if s == 0:
        return _make_solution(inst, ())
    if not inst.columns:
        raise InfeasibleError("no columns")
    packed = _pack_ints(inst.columns, inst.n)
    support: set[int] = set()
    while s:
        dists = _hamming_to(packed, s, inst.n)
        j = int(np.argmin(dists))
        if dists[j] >= s.bit_count():
            for p in _canonical_decomposition(inst, s, _canonical_index(inst)):
                support.symmetric_difference_update((p,))
            s = 0
            break
        support.symmetric_difference_update((j,))
        s ^= inst.columns[j]
    return _make_solution(inst, support)


# -- bounded look-ahead tree search ----------------------------------------------


def solve_tree(
    inst: SyndromeInstance, width: int | None, depth: int
) -> SyndromeSolution:
    """Look-ahead variant of the greedy: expand the ``width`` most promising
    columns per node down to ``depth`` levels, then commit one step toward
    the best leaf and repeat.  ``width=None`` means unbounded; with
    ``depth=1`` that reproduces ``solve_greedy`` exactly.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if width is not None and width < 1:
        raise ValueError("width must be >= 1 (or None)")
    s = inst.target
    if s == 0:
        return _make_solution(inst, ())
    if not inst.columns:
        raise InfeasibleError("no columns")
    m = inst.m
    packed = _pack_ints(inst.columns, inst.n)
    col_idx = np.arange(m)
    k = m if width is None else min(width, m)
    support: set[int] = set()
    guard = 4 * (inst.n + s.bit_count()) + 16

    for _ in range(guard):
        if s == 0:
            return _make_solution(inst, support)
        # expand the look-ahead tree level by level
        best: tuple[int, int, int, int] | None = None  # (wt, steps, order, move)
        counter = 0
        level: list[tuple[int, int]] = [(s, -1)]  # (residual, first move)
        for step in range(1, depth + 1):
            nxt: list[tuple[int, int]] = []
            seen: set[int] = set()
            for node_s, first in level:
                dists = _hamming_to(packed, node_s, inst.n)
                if k < m:
                    cand = np.argpartition(dists, k - 1)[:k]
                    cand = cand[np.lexsort((col_idx[cand], dists[cand]))]
                else:
                    cand = np.lexsort((col_idx, dists))
                for j in map(int, cand):
                    s2 = node_s ^ inst.columns[j]
                    f2 = j if first < 0 else first
                    wt2 = dists[j]
                    leaf = s2 == 0 or step == depth
                    if leaf:
                        entry = (int(wt2), step, counter, f2)
                        counter += 1
                        if best is None or entry[:3] < best[:3]:
                            best = entry
                    if s2 and step < depth and s2 not in seen:
                        seen.add(s2)
                        nxt.append((s2, f2))
            level = nxt
            if not level:
                break
        if best is None:
            raise InfeasibleError("look-ahead found no move")
        move = best[3]
        prev_wt = s.bit_count()
        s ^= inst.columns[move]
        support.symmetric_difference_update((move,))
        if s and s.bit_count() >= prev_wt and best[0] >= prev_wt:
            # no progress anywhere in the horizon: fall back on canonicals
            for p in _canonical_decomposition(inst, s, _canonical_index(inst)):
                support.symmetric_difference_update((p,))
            s = 0
    if s:
        for p in _canonical_decomposition(inst, s, _canonical_index(inst)):
            support.symmetric_difference_update((p,))
    return _make_solution(inst, support)


# -- information-set decoding -----------------------------------------------------


if _HAVE_NUMBA:
    _U0 = np.uint64(0)
    _U1 = np.uint64(1)
    _M1 = np.uint64(0x5555555555555555)
    _M2 = np.uint64(0x3333333333333333)
    _M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
    _H01 = np.uint64(0x0101010101010101)
    _S1, _S2, _S4, _S56, _S6 = (np.uint64(k) for k in (1, 2, 4, 56, 6))
    _L6 = np.uint64(63)

    @numba.njit(inline="always")
    def _popcount64(x):  # pragma: no cover - JIT
        x = x - ((x >> _S1) & _M1)
        x = (x & _M2) + ((x >> _S2) & _M2)
        x = (x + (x >> _S4)) & _M4
        return (x * _H01) >> _S56

    @numba.njit(cache=True)
    def _isd_trials_kernel(rows0, n, m, perms):  # pragma: no cover - JIT
        # rows0: (n, wm) uint64, coordinate rows packed over m+1 bit
        # positions (bit m carries the target); perms: (T, m) column orders.
        wm = rows0.shape[1]
        wn = (n + 63) // 64
        n_trials = perms.shape[0]
        weights = np.empty(n_trials, dtype=np.int64)
        best_w = np.int64(1 << 60)
        best_x = np.zeros(m, dtype=np.uint8)
        rows = np.empty_like(rows0)
        colbits = np.empty((m + 1, wn), dtype=np.uint64)
        x = np.zeros(m, dtype=np.uint8)
        for t in range(n_trials):
            rows[:] = rows0
            r = 0
            for idx in range(m):
                j = perms[t, idx]
                jw = np.uint64(j) >> _S6
                jb = np.uint64(j) & _L6
                piv = -1
                for i in range(r, n):
                    if (rows[i, jw] >> jb) & _U1:
                        piv = i
                        break
                if piv < 0:
                    continue
                if piv != r:
                    for q in range(wm):
                        tmp = rows[r, q]
                        rows[r, q] = rows[piv, q]
                        rows[piv, q] = tmp
                for i in range(n):
                    if i != r and ((rows[i, jw] >> jb) & _U1):
                        for q in range(wm):
                            rows[i, q] ^= rows[r, q]
                r += 1
                if r == n:
                    break
            # repack column-major (walk set bits): one word per column if n <= 64
            for j in range(m + 1):
                for w in range(wn):
                    colbits[j, w] = _U0
            for i in range(n):
                iw = np.uint64(i) >> _S6
                bit_i = _U1 << (np.uint64(i) & _L6)
                for q in range(wm):
                    word = rows[i, q]
                    base = q << 6
                    while word:
                        lsb = word & (~word + _U1)
                        j = base + np.int64(_popcount64(lsb - _U1))
                        colbits[j, iw] |= bit_i
                        word ^= lsb
            # greedy on the transformed instance
            for j in range(m):
                x[j] = 0
            swt = np.int64(0)
            for w in range(wn):
                swt += np.int64(_popcount64(colbits[m, w]))
            feasible = True
            while swt > 0:
                bj = -1
                bw = swt
                for j in range(m):
                    d = np.int64(0)
                    for w in range(wn):
                        d += np.int64(_popcount64(colbits[j, w] ^ colbits[m, w]))
                    if d < bw:
                        bw = d
                        bj = j
                if bj < 0:
                    feasible = False
                    break
                x[bj] ^= 1
                for w in range(wn):
                    colbits[m, w] ^= colbits[bj, w]
                swt = bw
            if feasible:
                wx = np.int64(0)
                for j in range(m):
                    wx += x[j]
                weights[t] = wx
                if wx < best_w:
                    best_w = wx
                    best_x[:] = x
            else:
                weights[t] = -1
        return weights, best_x


def _transform_by_information_set(
    inst: SyndromeInstance, order: Sequence[int]
) -> SyndromeInstance:
    """Change basis so the first independent columns in ``order`` become
    canonical.  Works on coordinate-packed rows; O(n^2 m / word)."""
    n, m = inst.n, inst.m
    # rows over columns, augmented with the target in bit position m
    rows = [0] * n
    for j, col in enumerate(inst.columns):
        c = col
        while c:
            lsb = c & -c
            rows[lsb.bit_length() - 1] |= 1 << j
            c ^= lsb
    t = inst.target
    while t:
        lsb = t & -t
        rows[lsb.bit_length() - 1] |= 1 << m
        t ^= lsb
    r = 0
    for j in order:
        piv = next((i for i in range(r, n) if (rows[i] >> j) & 1), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(n):
            if i != r and (rows[i] >> j) & 1:
                rows[i] ^= rows[r]
        r += 1
        if r == n:
            break
    cols = [0] * m
    tgt = 0
    for i, row in enumerate(rows):
        c = row
        while c:
            lsb = c & -c
            b = lsb.bit_length() - 1
            if b == m:
                tgt |= 1 << i
            else:
                cols[b] |= 1 << i
            c ^= lsb
    return SyndromeInstance(n, tuple(cols), tgt, inst.costs)


def _isd_orders(
    inst: SyndromeInstance, n_trials: int, seed
) -> np.ndarray:
    """Column scan orders for trials 1..n_trials-1 (trial 0 is the identity
    basis and is handled separately).  Uses one seeded stream so a longer run
    extends a shorter one (best-of-n is then monotone in n)."""
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    m = inst.m
    if n_trials <= 0:
        return np.zeros((0, m), dtype=np.int64)
    if inst.costs is None:
        tiles = np.tile(np.arange(m, dtype=np.int64), (n_trials, 1))
        return rng.permuted(tiles, axis=1)
    # weighted: prefer low-cost columns when building the information set
    costs = np.asarray(inst.costs)
    jitter = rng.random((n_trials, m))
    return np.lexsort((jitter, np.broadcast_to(costs, (n_trials, m))), axis=1)


def solve_isd(
    inst: SyndromeInstance, n_iter: int, seed: int | None = None
) -> SyndromeSolution:
    """Information-set decoding: trial 0 solves in the identity basis; every
    further trial picks a random information set (independent columns),
    rewrites the instance in that basis and re-runs the greedy.  Best (then
    earliest) trial wins; supports are reported in original column indices."""
    if n_iter < 1:
        raise ValueError("n_iter must be >= 1")
    base = solve_weighted_greedy if inst.costs is not None else solve_greedy
    best = base(inst)
    if inst.target == 0 or best.weight == 0 or n_iter == 1:
        return best
    orders = _isd_orders(inst, n_iter - 1, seed)
    if _HAVE_NUMBA and inst.costs is None and inst.m and inst.n:
        rows = [0] * inst.n
        for j, col in enumerate(inst.columns):
            c = col
            while c:
                lsb = c & -c
                rows[lsb.bit_length() - 1] |= 1 << j
                c ^= lsb
        t = inst.target
        while t:
            lsb = t & -t
            rows[lsb.bit_length() - 1] |= 1 << inst.m
            t ^= lsb
        packed_rows = _pack_ints(rows, inst.m + 1)
        weights, best_x = _isd_trials_kernel(packed_rows, inst.n, inst.m, orders)
        valid = weights[weights >= 0]
        if valid.size and valid.min() < best.weight:
            sol = _make_solution(inst, map(int, np.flatnonzero(best_x)))
            if sol.weight < best.weight:
                best = sol
        return best
    for order in orders:
        try:
            sol = base(_transform_by_information_set(inst, [int(j) for j in order]))
        except InfeasibleError:
            continue
        sol = _make_solution(inst, sol.support)  # weight in original costs
        if sol.weight < best.weight:
            best = sol
    return best


def solve_with_random_bases(
    inst: SyndromeInstance,
    base_solver: Callable[[SyndromeInstance], SyndromeSolution],
    n_trials: int,
    seed: int | None = None,
) -> SyndromeSolution:
    """Best-of-``n_trials`` wrapper re-solving under random information-set
    bases with an arbitrary base solver (trial 0 is the identity basis)."""
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    best = base_solver(inst)
    for order in _isd_orders(inst, n_trials - 1, seed):
        try:
            sol = base_solver(
                _transform_by_information_set(inst, [int(j) for j in order])
            )
        except InfeasibleError:
            continue
        sol = _make_solution(inst, sol.support)
        if sol.weight < best.weight:
            best = sol
    return best


# -- exact branch and bound --------------------------------------------------------


def solve_exact(
    inst: SyndromeInstance,
    budget: int | None = None,
    warm_start: SyndromeSolution | None = None,
) -> SyndromeSolution:
    """Optimal decoding by branch and bound over column subsets.

    ``budget`` caps visited nodes; on exhaustion the best incumbent is
    returned with ``proven_optimal=False`` (BudgetExhaustedError if there is
    none).  A ``warm_start`` solution tightens the initial bound.
    """
    if inst.target == 0:
        return _make_solution(inst, (), proven=True)
    m = inst.m
    cols = inst.columns
    costs = inst.costs
    best_sup: tuple[int, ...] | None = None
    best_w = math.inf
    if warm_start is not None:
        if not solution_is_valid(inst, warm_start):
            raise ValueError("warm start does not solve the instance")
        best_sup = tuple(sorted(warm_start.support))
        best_w = _solution_weight(inst, best_sup)

    # branch on heavy, cheap columns first
    def colkey(j: int):
        c = 1.0 if costs is None else costs[j]
        return (-cols[j].bit_count() / c, j)

    order = sorted(range(m), key=colkey)
    suffix_maxwt = [0] * (m + 1)
    suffix_minc = [math.inf] * (m + 1)
    for i in range(m - 1, -1, -1):
        j = order[i]
        suffix_maxwt[i] = max(suffix_maxwt[i + 1], cols[j].bit_count())
        suffix_minc[i] = min(suffix_minc[i + 1], 1.0 if costs is None else costs[j])

    nodes = 0
    exhausted = False
    # stack of (idx, residual, cost, chosen-so-far)
    stack: list[tuple[int, int, float, tuple[int, ...]]] = [(0, inst.target, 0.0, ())]
    while stack:
        idx, s, cost, chosen = stack.pop()
        if s == 0:
            if cost < best_w:
                best_w, best_sup = cost, chosen
            continue
        if idx == m:
            continue
        nodes += 1
        if budget is not None and nodes > budget:
            exhausted = True
            break
        if suffix_maxwt[idx] == 0:
            continue
        lb = math.ceil(s.bit_count() / suffix_maxwt[idx]) * suffix_minc[idx]
        if cost + lb >= best_w:
            continue
        j = order[idx]
        cj = 1.0 if costs is None else costs[j]
        # explore "include j" first (LIFO: push exclude before include)
        stack.append((idx + 1, s, cost, chosen))
        stack.append((idx + 1, s ^ cols[j], cost + cj, chosen + (j,)))
    if best_sup is None:
        if exhausted:
            raise BudgetExhaustedError("budget exhausted before any solution")
        raise InfeasibleError("target outside column span")
    return _make_solution(inst, best_sup, proven=not exhausted)


# -- weighted greedy ----------------------------------------------------------------


def solve_weighted_greedy(inst: SyndromeInstance) -> SyndromeSolution:
    """Greedy for weighted instances: pick the column minimizing
    ``cost[j] + bc(s ^ v_j)`` where bc() prices each residual coordinate at
    its cheapest canonical column.  Requires costs and terminates because the
    chosen score never exceeds bc(s)."""
    if inst.costs is None:
        raise ValueError("weighted greedy needs per-column costs")
    s = inst.target
    if s == 0:
        return _make_solution(inst, ())
    canon = _canonical_index(inst)
    canon_cost = [math.inf] * inst.n
    for bit, j in canon.items():
        canon_cost[bit] = inst.costs[j]

    def bc(x: int) -> float:
        acc = 0.0
        while x:
            lsb = x & -x
            acc += canon_cost[lsb.bit_length() - 1]
            if acc == math.inf:
                return acc
            x ^= lsb
        return acc

    support: set[int] = set()
    guard = 4 * (inst.m + inst.n) + 16
    for _ in range(guard):
        if s == 0:
            return _make_solution(inst, support)
        best = None
        for j, col in enumerate(inst.columns):
            score = inst.costs[j] + bc(s ^ col)
            key = (score, inst.costs[j], j)
            if best is None or key < best:
                best = key
        if best is None or best[0] == math.inf:
            raise InfeasibleError("no affordable column (missing canonicals)")
        j = best[2]
        support.symmetric_difference_update((j,))
        s ^= inst.columns[j]
    raise InfeasibleError("weighted greedy failed to converge")


# -- parity/generator utilities ------------------------------------------------------


@dataclass(frozen=True)
class GeneratorMatrix:
    """Columns spanning the solution space of ``H x = 0`` for an instance
    whose first n columns are canonical: shape m x (m - n)."""

    matrix: BitMatrix

    @property
    def n_parities(self) -> int:
        return self.matrix.n_rows

    @property
    def dim(self) -> int:
        return self.matrix.n_cols


def generator_from_parities(inst: SyndromeInstance) -> GeneratorMatrix:
    """Build the generator for H = (I | P): G = [P over I]."""
    n, m = inst.n, inst.m
    if m < n:
        raise ValueError("instance has fewer columns than coordinates")
    for i in range(n):
        if inst.columns[i] != 1 << i:
            raise ValueError("first n columns must be the canonical vectors")
    rows = []
    for i in range(n):  # P block: rows of the parity part
        acc = 0
        for j in range(n, m):
            acc |= ((inst.columns[j] >> i) & 1) << (j - n)
        rows.append(acc)
    rows.extend(1 << (j - n) for j in range(n, m))  # identity block
    return GeneratorMatrix(BitMatrix(m, m - n, rows))


@dataclass(frozen=True)
class ParityGraph:
    """Derivation DAG of a chronological parity list: each non-canonical
    parity is the XOR of two earlier ones (its parents).  The triangles
    (parent, parent, child) give a generator of the solution space, three
    ones per column."""

    values: tuple[int, ...]
    n_canonical: int
    parents: tuple[tuple[int, int] | None, ...]
    generator: GeneratorMatrix

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        out = []
        for child, pair in enumerate(self.parents):
            if pair is not None:
                out.extend(((pair[0], child), (pair[1], child)))
        return tuple(out)


def parity_graph(values: Sequence[int], n_qubits: int) -> ParityGraph:
    """Recover the derivation structure of harvested parities.

    ``values[:n_qubits]`` must be the canonical vectors; every later value
    must equal the XOR of two earlier values (parents are chosen
    deterministically: smallest first parent, then smallest second)."""
    vals = tuple(values)
    m = len(vals)
    n = n_qubits
    if vals[:n] != tuple(1 << i for i in range(n)):
        raise ValueError("first n parities must be canonical")
    index_of: dict[int, int] = {}
    parents: list[tuple[int, int] | None] = []
    for i, v in enumerate(vals):
        if i < n:
            parents.append(None)
        else:
            found = None
            for a in range(i):
                b = index_of.get(v ^ vals[a])
                if b is not None and b < i and b != a:
                    found = (min(a, b), max(a, b))
                    break
            if found is None:
                raise ValueError(f"parity {i} is not the XOR of two earlier parities")
            parents.append(found)
        if v not in index_of:
            index_of[v] = i
    gen_rows = [0] * m
    for child in range(n, m):
        a, b = parents[child]
        col = child - n
        gen_rows[a] |= 1 << col
        gen_rows[b] |= 1 << col
        gen_rows[child] |= 1 << col
    return ParityGraph(
        vals, n, tuple(parents), GeneratorMatrix(BitMatrix(m, m - n, gen_rows))
    )
