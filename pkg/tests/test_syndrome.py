"""Tests for the syndrome decoding solvers."""

import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cnotsynth.syndrome import (
    BudgetExhaustedError,
    InfeasibleError,
    SyndromeInstance,
    SyndromeSolution,
    generator_from_parities,
    parity_graph,
    solution_is_valid,
    solve_exact,
    solve_greedy,
    solve_isd,
    solve_tree,
    solve_weighted_greedy,
    solve_with_random_bases,
)


def xor_columns(inst, support):
    acc = 0
    for j in support:
        acc ^= inst.columns[j]
    return acc


@st.composite
def instances(draw, max_n=7, max_extra=8, weighted=False):
    """Random instances whose first n columns are canonical (always feasible)."""
    n = draw(st.integers(2, max_n))
    extra = draw(
        st.lists(st.integers(1, (1 << n) - 1), min_size=0, max_size=max_extra)
    )
    cols = tuple(1 << i for i in range(n)) + tuple(extra)
    target = draw(st.integers(0, (1 << n) - 1))
    costs = None
    if weighted:
        costs = tuple(
            draw(
                st.lists(
                    st.integers(1, 9), min_size=len(cols), max_size=len(cols)
                )
            )
        )
    return SyndromeInstance(n, cols, target, costs)


# A trap for the plain greedy: target needs two weight-3 columns, but the
# weight-4 distractor looks closer and costs an extra gate overall.
TRAP = SyndromeInstance(
    n=6,
    columns=tuple(1 << i for i in range(6)) + (0b101010, 0b010101, 0b001111),
    target=0b111111,
)


def test_instance_validation():
    with pytest.raises(ValueError):
        SyndromeInstance(2, (0b100,), 0b01)
    with pytest.raises(ValueError):
        SyndromeInstance(2, (0b01,), 0b100)
    with pytest.raises(ValueError):
        SyndromeInstance(2, (0b01,), 0b01, costs=(1.0, 2.0))
    with pytest.raises(ValueError):
        SyndromeInstance(2, (0b01,), 0b01, costs=(0.0,))


def test_greedy_frozen_example():
    inst = SyndromeInstance(
        4, tuple(1 << i for i in range(4)) + (0b0111, 0b1100), 0b1111
    )
    sol = solve_greedy(inst)
    assert sol.support == (3, 4)
    assert sol.weight == 2
    assert solution_is_valid(inst, sol)


def test_greedy_walks_into_the_trap():
    sol = solve_greedy(TRAP)
    assert solution_is_valid(TRAP, sol)
    assert sol.weight == 3  # distractor + two canonicals


def test_tree_escapes_the_trap():
    sol = solve_tree(TRAP, width=None, depth=2)
    assert solution_is_valid(TRAP, sol)
    assert sol.support == (6, 7)
    assert sol.weight == 2


def test_exact_on_trap():
    sol = solve_exact(TRAP)
    assert sol.proven_optimal
    assert sol.weight == 2


def test_zero_target_is_empty_solution():
    inst = SyndromeInstance(3, (0b001, 0b010), 0)
    for sol in (
        solve_greedy(inst),
        solve_tree(inst, 4, 3),
        solve_isd(inst, 5, seed=1),
        solve_exact(inst),
    ):
        assert sol.support == ()
        assert sol.weight == 0


def test_infeasible_target():
    inst = SyndromeInstance(2, (0b11,), 0b01)
    with pytest.raises(InfeasibleError):
        solve_greedy(inst)
    with pytest.raises(InfeasibleError):
        solve_tree(inst, None, 2)
    with pytest.raises(InfeasibleError):
        solve_exact(inst)


@given(instances())
@settings(max_examples=120)
def test_greedy_valid_and_sorted(inst):
    sol = solve_greedy(inst)
    assert solution_is_valid(inst, sol)
    assert sol.support == tuple(sorted(set(sol.support)))
    assert sol.weight == len(sol.support)


@given(instances())
@settings(max_examples=60)
def test_tree_depth_one_equals_greedy(inst):
    assert solve_tree(inst, None, 1).support == solve_greedy(inst).support


@given(instances(max_n=6, max_extra=5), st.integers(1, 4), st.integers(1, 3))
@settings(max_examples=40, deadline=None)
def test_tree_valid(inst, width, depth):
    sol = solve_tree(inst, width, depth)
    assert solution_is_valid(inst, sol)


@given(instances(max_n=5, max_extra=5))
@settings(max_examples=40, deadline=None)
def test_exact_is_optimal_vs_bruteforce(inst):
    sol = solve_exact(inst)
    assert solution_is_valid(inst, sol)
    assert sol.proven_optimal
    best = min(
        (
            len(sub)
            for r in range(inst.m + 1)
            for sub in itertools.combinations(range(inst.m), r)
            if xor_columns(inst, sub) == inst.target
        ),
    )
    assert sol.weight == best


@given(instances(max_n=6, max_extra=6))
@settings(max_examples=30, deadline=None)
def test_solver_hierarchy(inst):
    greedy = solve_greedy(inst)
    isd = solve_isd(inst, 20, seed=3)
    exact = solve_exact(inst)
    assert exact.weight <= isd.weight <= greedy.weight
    assert solve_tree(inst, 4, 2).weight >= exact.weight


@given(instances(max_n=6, max_extra=6))
@settings(max_examples=20, deadline=None)
def test_isd_monotone_in_iterations(inst):
    weights = [solve_isd(inst, k, seed=11).weight for k in (1, 3, 10, 25)]
    assert all(a >= b for a, b in zip(weights, weights[1:]))
    for k in (3, 25):
        assert solution_is_valid(inst, solve_isd(inst, k, seed=11))


def test_isd_deterministic_given_seed():
    a = solve_isd(TRAP, 40, seed=5)
    b = solve_isd(TRAP, 40, seed=5)
    assert a == b
    assert a.weight <= solve_greedy(TRAP).weight


def test_isd_finds_trap_optimum_eventually():
    assert solve_isd(TRAP, 200, seed=0).weight == 2


def test_random_bases_wrapper_improves_tree():
    base = lambda inst: solve_tree(inst, 2, 1)
    wrapped = solve_with_random_bases(TRAP, base, 50, seed=2)
    assert solution_is_valid(TRAP, wrapped)
    assert wrapped.weight <= base(TRAP).weight


def test_exact_budget_exhaustion():
    with pytest.raises(BudgetExhaustedError):
        solve_exact(TRAP, budget=0)
    warm = solve_greedy(TRAP)
    sol = solve_exact(TRAP, budget=0, warm_start=warm)
    assert sol.support == warm.support
    assert not sol.proven_optimal


def test_exact_rejects_bad_warm_start():
    with pytest.raises(ValueError):
        solve_exact(TRAP, warm_start=SyndromeSolution((0,), 1.0))


def test_weighted_greedy_prefers_cheap_pair():
    inst = SyndromeInstance(2, (0b01, 0b10, 0b11), 0b11, costs=(1, 1, 10))
    plain = solve_greedy(inst)
    assert plain.support == (2,)
    assert plain.weight == 10  # cost-weighted even for the plain greedy
    weighted = solve_weighted_greedy(inst)
    assert weighted.support == (0, 1)
    assert weighted.weight == 2
    exact = solve_exact(inst)
    assert exact.support == (0, 1) and exact.proven_optimal


def test_weighted_greedy_needs_costs():
    with pytest.raises(ValueError):
        solve_weighted_greedy(TRAP)


@given(instances(weighted=True, max_n=6, max_extra=6))
@settings(max_examples=60, deadline=None)
def test_weighted_greedy_valid_and_bounded(inst):
    sol = solve_weighted_greedy(inst)
    assert solution_is_valid(inst, sol)
    # never worse than paying canonical price for every target bit
    canon_bound = sum(
        min(inst.costs[j] for j in range(inst.n) if inst.columns[j] == 1 << b)
        for b in range(inst.n)
        if (inst.target >> b) & 1
    )
    assert sol.weight <= canon_bound or math.isclose(sol.weight, canon_bound)


@given(instances(weighted=True, max_n=5, max_extra=4))
@settings(max_examples=30, deadline=None)
def test_exact_minimizes_cost_on_weighted(inst):
    sol = solve_exact(inst)
    best = min(
        sum(inst.costs[j] for j in sub)
        for r in range(inst.m + 1)
        for sub in itertools.combinations(range(inst.m), r)
        if xor_columns(inst, sub) == inst.target
    )
    assert math.isclose(sol.weight, best)


def test_generator_from_parities():
    inst = SyndromeInstance(
        3, (0b001, 0b010, 0b100, 0b011, 0b101), 0b110
    )
    gen = generator_from_parities(inst)
    assert gen.n_parities == 5 and gen.dim == 2
    for col in range(gen.dim):
        acc = 0
        for row in range(gen.n_parities):
            if gen.matrix.get(row, col):
                acc ^= inst.columns[row]
        assert acc == 0


def test_generator_requires_canonical_prefix():
    inst = SyndromeInstance(2, (0b10, 0b01, 0b11), 0)
    with pytest.raises(ValueError):
        generator_from_parities(inst)


@given(instances(max_n=6, max_extra=6))
@settings(max_examples=60)
def test_generator_columns_are_null_vectors(inst):
    gen = generator_from_parities(inst)
    for col in range(gen.dim):
        acc = 0
        for row in range(gen.n_parities):
            if gen.matrix.get(row, col):
                acc ^= inst.columns[row]
        assert acc == 0


def test_parity_graph_structure():
    values = (0b001, 0b010, 0b100, 0b011, 0b111)
    pg = parity_graph(values, 3)
    assert pg.parents == (None, None, None, (0, 1), (2, 3))
    assert set(pg.edges) == {(0, 3), (1, 3), (2, 4), (3, 4)}
    # each generator column has exactly three ones and XORs to zero
    for col in range(pg.generator.dim):
        rows = [
            r
            for r in range(pg.generator.n_parities)
            if pg.generator.matrix.get(r, col)
        ]
        assert len(rows) == 3
        acc = 0
        for r in rows:
            acc ^= values[r]
        assert acc == 0


def test_parity_graph_rejects_non_derivable():
    with pytest.raises(ValueError):
        parity_graph((0b001, 0b010, 0b100, 0b111), 3)
    with pytest.raises(ValueError):
        parity_graph((0b010, 0b001), 2)
