"""CNOT gates and circuits over n wires.

Gates execute left to right.  Simulating ``CNOT(c, t)`` XORs row ``c`` into
row ``t`` of the tracked operator, so ``simulate`` of a circuit is the
product of its gates' transvection matrices applied in list order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Iterator, Sequence

import numpy as np

from .gf2 import BitMatrix

if TYPE_CHECKING:  # pragma: no cover
    from .topology import ConnectivityGraph

__all__ = [
    "CnotGate",
    "CnotCircuit",
    "complies_with",
    "inverse_circuit",
    "random_circuit",
    "random_operator",
    "simulate",
    "simulate_rows",
    "transpose_circuit",
]


@dataclass(frozen=True)
class CnotGate:
    control: int
    target: int

    def __post_init__(self):
        if self.control == self.target:
            raise ValueError("control and target must differ")
        if self.control < 0 or self.target < 0:
            raise ValueError("wire indices must be non-negative")

    def flipped(self) -> "CnotGate":
        return CnotGate(self.target, self.control)


@dataclass(frozen=True)
class CnotCircuit:
    """An ordered CNOT gate list on ``n_qubits`` wires (0-based indices)."""

    n_qubits: int
    gates: tuple[CnotGate, ...] = ()

    def __post_init__(self):
        for g in self.gates:
            if g.control >= self.n_qubits or g.target >= self.n_qubits:
                raise ValueError(f"gate {g} outside wire range 0..{self.n_qubits - 1}")

    @classmethod
    def from_pairs(cls, n_qubits: int, pairs: Iterable[tuple[int, int]]) -> "CnotCircuit":
        return cls(n_qubits, tuple(CnotGate(c, t) for c, t in pairs))

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self) -> Iterator[CnotGate]:
        return iter(self.gates)

    def concat(self, other: "CnotCircuit") -> "CnotCircuit":
        if other.n_qubits != self.n_qubits:
            raise ValueError("wire counts differ")
        return CnotCircuit(self.n_qubits, self.gates + other.gates)

    # -- text format ------------------------------------------------------

    @classmethod
    def from_text(cls, text: str) -> "CnotCircuit":
        """Parse the circuit text format: first line the wire count, then one
        ``CNOT c t`` line per gate."""
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty circuit text")
        n = int(lines[0])
        pairs = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 3 or parts[0].upper() != "CNOT":
                raise ValueError(f"bad gate line: {ln!r}")
            pairs.append((int(parts[1]), int(parts[2])))
        return cls.from_pairs(n, pairs)

    def to_text(self) -> str:
        out = [str(self.n_qubits)]
        out.extend(f"CNOT {g.control} {g.target}" for g in self.gates)
        return "\n".join(out) + "\n"


def simulate_rows(circuit: CnotCircuit) -> list[int]:
    """Row-packed operator of the circuit (list of ints, one per wire)."""
    rows = [1 << i for i in range(circuit.n_qubits)]
    for g in circuit.gates:
        rows[g.target] ^= rows[g.control]
    return rows


def simulate(circuit: CnotCircuit) -> BitMatrix:
    n = circuit.n_qubits
    return BitMatrix(n, n, simulate_rows(circuit))


def inverse_circuit(circuit: CnotCircuit) -> CnotCircuit:
    """Circuit simulating the inverse operator (gates reversed; CNOT is an
    involution so gates are unchanged)."""
    return CnotCircuit(circuit.n_qubits, tuple(reversed(circuit.gates)))


def transpose_circuit(circuit: CnotCircuit) -> CnotCircuit:
    """Circuit simulating the transposed operator: gate order reversed and
    every gate's control/target swapped.  This is what lets a
    lower-triangular synthesizer also produce upper-triangular circuits."""
    return CnotCircuit(
        circuit.n_qubits, tuple(g.flipped() for g in reversed(circuit.gates))
    )


def complies_with(circuit: CnotCircuit, graph: "ConnectivityGraph") -> bool:
    """Whether every gate acts on an edge of ``graph``."""
    if circuit.n_qubits != graph.n_nodes:
        return False
    return all(graph.has_edge(g.control, g.target) for g in circuit.gates)


def random_circuit(
    n: int, n_gates: int, rng: np.random.Generator | int | None = None
) -> CnotCircuit:
    """Uniformly random CNOT circuit: each gate an independent (c, t) pair."""
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    pairs = []
    for _ in range(n_gates):
        c = int(rng.integers(n))
        t = int(rng.integers(n - 1))
        if t >= c:
            t += 1
        pairs.append((c, t))
    return CnotCircuit.from_pairs(n, pairs)


def random_operator(
    n: int, n_gates: int, seed: np.random.Generator | int | None = None
) -> BitMatrix:
    """Invertible operator obtained by simulating a random CNOT circuit."""
    return simulate(random_circuit(n, n_gates, seed))
