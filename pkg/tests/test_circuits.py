"""Tests for CNOT circuits: simulation, inverse/transpose, text I/O."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cnotsynth.circuits import (
    CnotCircuit,
    CnotGate,
    complies_with,
    inverse_circuit,
    random_circuit,
    random_operator,
    simulate,
    transpose_circuit,
)
from cnotsynth.gf2 import BitMatrix, identity, mat_mul, rank, transpose
from cnotsynth.topology import grid, line


def test_gate_validation():
    with pytest.raises(ValueError):
        CnotGate(1, 1)
    with pytest.raises(ValueError):
        CnotGate(-1, 0)
    with pytest.raises(ValueError):
        CnotCircuit(2, (CnotGate(0, 2),))


def test_simulate_single_gate():
    c = CnotCircuit.from_pairs(2, [(0, 1)])
    assert simulate(c) == BitMatrix.from_strings(["10", "11"])


def test_simulate_order_matters():
    a = CnotCircuit.from_pairs(3, [(0, 1), (1, 2)])
    b = CnotCircuit.from_pairs(3, [(1, 2), (0, 1)])
    assert simulate(a) != simulate(b)
    # left-to-right: row2 picks up row0 through row1 only in variant a
    assert simulate(a).get(2, 0) == 1
    assert simulate(b).get(2, 0) == 0


def _random_circuits(draw_n=st.integers(2, 10), draw_len=st.integers(0, 40)):
    return st.builds(
        lambda n, m, seed: random_circuit(n, m, np.random.default_rng(seed)),
        draw_n,
        draw_len,
        st.integers(0, 2**32 - 1),
    )


@given(_random_circuits())
@settings(max_examples=60, deadline=None)
def test_inverse_circuit_property(c):
    assert mat_mul(simulate(c), simulate(inverse_circuit(c))) == identity(c.n_qubits)


@given(_random_circuits())
@settings(max_examples=60, deadline=None)
def test_transpose_circuit_property(c):
    assert simulate(transpose_circuit(c)) == transpose(simulate(c))
    assert transpose_circuit(transpose_circuit(c)) == c


def test_concat_simulates_to_product():
    a = random_circuit(5, 12, np.random.default_rng(0))
    b = random_circuit(5, 9, np.random.default_rng(1))
    # gates of b run after gates of a
    assert simulate(a.concat(b)) == mat_mul(simulate(b), simulate(a))


def test_text_roundtrip():
    c = CnotCircuit.from_pairs(3, [(0, 1), (2, 0)])
    text = c.to_text()
    assert text == "3\nCNOT 0 1\nCNOT 2 0\n"
    assert CnotCircuit.from_text(text) == c


def test_text_rejects_garbage():
    with pytest.raises(ValueError):
        CnotCircuit.from_text("3\nCNOT 0\n")
    with pytest.raises(ValueError):
        CnotCircuit.from_text("3\nTOFF 0 1 2\n")
    with pytest.raises(ValueError):
        CnotCircuit.from_text("")


def test_random_operator_invertible_and_seeded():
    a = random_operator(8, 64, seed=123)
    b = random_operator(8, 64, seed=123)
    c = random_operator(8, 64, seed=124)
    assert a == b
    assert a != c
    assert rank(a) == 8


def test_random_operator_dense_at_n_squared_gates():
    n = 24
    a = random_operator(n, n * n, seed=5)
    mean_weight = sum(r.bit_count() for r in a.rows) / n
    assert n * 0.3 < mean_weight < n * 0.7  # near n/2 on dense input


def test_complies_with():
    path = line(3)
    ok = CnotCircuit.from_pairs(3, [(0, 1), (2, 1)])
    bad = CnotCircuit.from_pairs(3, [(0, 2)])
    assert complies_with(ok, path)
    assert not complies_with(bad, path)
    assert not complies_with(ok, grid(2, 2))  # wire count mismatch
