#!/usr/bin/env python3
"""Walk through the library API on a small example: synthesize a random
9-qubit operator for the 3x3 grid, verify it, and compare against the
all-to-all baselines."""

from cnotsynth.circuits import complies_with, random_operator, simulate
from cnotsynth.constrained import ConstrainedConfig, synth_general_constrained
from cnotsynth.topology import grid
from cnotsynth.unconstrained import SynthesisConfig, pmh, synth_general

a = random_operator(9, 200, seed=1)
print("operator:")
print(a.to_text())

g = grid(3, 3)
cfg = ConstrainedConfig(niter=20, use_symmetries=True, seed=0)
circ, perm = synth_general_constrained(a, g, cfg)
assert simulate(circ) == a and complies_with(circ, g) and perm == tuple(range(9))
print(f"3x3 grid, exact: {len(circ)} CNOTs")

circ_p, perm_p = synth_general_constrained(
    a, g, ConstrainedConfig(niter=20, use_symmetries=True, mode="perm", seed=0)
)
print(f"3x3 grid, up to output permutation {perm_p}: {len(circ_p)} CNOTs")

full, _ = synth_general(a, SynthesisConfig(solver="isd", isd_iters=500, seed=0))
print(f"all-to-all, isd(500): {len(full)} CNOTs (pmh baseline: {len(pmh(a))})")
