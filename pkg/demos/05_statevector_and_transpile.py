"""
Statevector simulation and gate counts
======================================

A UCCSD ansatz is a product of Pauli exponentials. The simulator applies them
directly; the transpiler rewrites each one into basis changes, a CNOT ladder
and a single Rz, then counts gates for the fidelity model.
"""
import numpy as np

from vqemu import fixtures
from vqemu.sim.statevector import run
from vqemu.sim.transpile import transpile, transpile_and_count
from vqemu.vqe import MolecularProblem

prob = MolecularProblem(fixtures.load("h2"))
circ = prob.ansatz
print(f"{circ.n_qubits} qubits, {circ.n_params} parameters, {len(circ.gates)} high-level gates")

# %% The transpiled circuit is the same unitary
theta = np.array([0.1, -0.05, 0.2])
a, b = run(circ, theta), run(transpile(circ), theta)
print("max amplitude difference after transpiling:", np.max(np.abs(a - b)))

# %% Gate counts, with and without merging adjacent single-qubit gates
print("fused:  ", transpile_and_count(circ))
print("unfused:", transpile_and_count(circ, fuse_single_qubit=False))
