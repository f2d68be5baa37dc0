"""
Circuit fidelity estimate
=========================

Fidelity is modelled as a product of per-gate and per-qubit success
probabilities, evaluated in log space so deep circuits do not underflow.
"""
from vqemu import fixtures
from vqemu.fidelity import ErrorRates, fidelity, sweep, sweep_to_csv
from vqemu.sim.transpile import transpile_and_count
from vqemu.vqe import AnsatzSpec, MolecularProblem

for name in ("h2", "h4", "lih"):
    for level in ("UCCS", "UCCSD"):
        counts = transpile_and_count(MolecularProblem(fixtures.load(name), ansatz_spec=AnsatzSpec(level)).ansatz)
        f = fidelity(counts, ErrorRates(1e-3, 1e-2, 1e-2))
        print(f"{name:4s} {level:5s} G1={counts.g1:5d} G2={counts.g2:5d} Q={counts.q:2d}  F={f:.4g}")

# %% How the H2 circuit degrades with two-qubit error
h2 = transpile_and_count(MolecularProblem(fixtures.load("h2")).ansatz)
print(sweep_to_csv(sweep(h2, [1e-3], [1e-4, 1e-3, 1e-2, 5e-2], [1e-2])), end="")
