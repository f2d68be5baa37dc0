"""
Fermion-to-qubit encodings
==========================

Jordan-Wigner, parity and Bravyi-Kitaev give the same spectrum with different
Pauli strings. Parity encoding with tapering removes two qubits whose values
are fixed by the electron count and spin.
"""
import numpy as np

from vqemu import fixtures
from vqemu.chem import build_hamiltonian
from vqemu.encoding import EncodingScheme, encode
from vqemu.sim.exact import exact_ground_energy

ints = fixtures.load("h2")
op = build_hamiltonian(ints)

# %% Same operator, four qubit Hamiltonians
for label in ("jw", "parity", "bk", "parity+taper"):
    h = encode(op, EncodingScheme.parse(label), ints.n_spin_orbitals, ints.n_electrons).real()
    spec = np.linalg.eigvalsh(h.sparse_matrix().toarray())
    print(f"{label:13s} {h.n_qubits} qubits {len(h):3d} terms  lowest eigenvalue {spec[0]:.10f}")

# %% The tapered H2 Hamiltonian is small enough to read
tapered = encode(op, EncodingScheme("parity", True), 4, 2).real()
print(tapered.to_text())
print("ground energy", exact_ground_energy(tapered), "reference", fixtures.metadata("h2")["e_fci"])

# %% Term counts grow roughly as the fourth power of the orbital count
for name in fixtures.scaling_family():
    f = fixtures.load(name)
    print(name, f.n_spin_orbitals, len(encode(build_hamiltonian(f), EncodingScheme("jordan_wigner"))))
