"""
Molecular integrals from FCIDUMP files
======================================

The bundled fixtures are STO-3G integrals written by PySCF. Loading one gives
spin-orbital integrals; an active space freezes core orbitals and drops high
virtuals while keeping the Hartree-Fock energy unchanged.
"""
from vqemu import fixtures
from vqemu.chem import ActiveSpaceSpec, apply_active_space, build_hamiltonian

# %% Load LiH and look at its size
lih = fixtures.load("lih")
print(f"LiH: {lih.n_spatial} spatial orbitals, {lih.n_electrons} electrons")
print(f"Hartree-Fock energy {lih.reference_energy():.10f} Ha")

# %% Freeze the Li 1s orbital and remove the two highest virtuals
for spec in (ActiveSpaceSpec((0,)), ActiveSpaceSpec((0,), (4, 5))):
    red = apply_active_space(lih, spec)
    op = build_hamiltonian(red)
    print(f"frozen={spec.frozen_occupied} removed={spec.removed_virtual}: "
          f"{red.n_spin_orbitals} spin orbitals, {len(op.terms)} fermionic terms, "
          f"E_HF {red.reference_energy():.10f}")
