"""Regenerate the bundled FCIDUMP fixtures and their reference energies.

Requires pyscf, which is not a runtime dependency of vqemu. Run from the
repository root::

    python tools/make_fixtures.py

Writes ``src/vqemu/data/fcidump/*.fcidump``, scan manifests and
``src/vqemu/data/fixtures.json`` with the HF and FCI energies that the test
suite uses as independent oracles.
"""

import json
from pathlib import Path

import numpy as np
from pyscf import fci, gto, mcscf, scf
from pyscf.tools import fcidump

DATA = Path(__file__).resolve().parents[1] / "src" / "vqemu" / "data"
OUT = DATA / "fcidump"


def diatomic(a, b, r):
    return f"{a} 0 0 0; {b} 0 0 {r:.6f}"


MOLECULES = {
    # scaling family, 4 to 16 spin orbitals
    "h2": ("H 0 0 0; H 0 0 0.7414", "sto-3g", 0),
    "h3p": ("H 0 0 0; H 0.9 0 0; H 0.45 0.7794 0", "sto-3g", 1),
    "h4": ("H 0 0 0; H 0.8 0 0; H 0.05 0.9 0; H 0.85 0.95 0.1", "sto-3g", 0),
    "h5p": ("H 0 0 0; H 0.8 0 0; H 0.05 0.9 0; H 0.85 0.95 0.1; H 0.4 0.5 0.8", "sto-3g", 1),
    "lih": (diatomic("Li", "H", 1.5949), "sto-3g", 0),
    "h2o": ("O 0 0 0.1173; H 0 0.7572 -0.4692; H 0 -0.7572 -0.4692", "sto-3g", 0),
    "beh2": ("Be 0 0 0; H 0 0 1.3264; H 0 0 -1.3264", "sto-3g", 0),
    "nh3": (
        "N 0 0 0.1128; H 0 0.9377 -0.2631; H 0.8121 -0.4689 -0.2631; H -0.8121 -0.4689 -0.2631",
        "sto-3g",
        0,
    ),
}

def hydrogen_cluster(k, seed=7):
    """Jittered random-walk chain of k H atoms, ~0.9 A bonds, no point-group symmetry."""
    rng = np.random.default_rng(seed + k)
    pos = [np.zeros(3)]
    while len(pos) < k:
        step = rng.normal(size=3)
        cand = pos[-1] + 0.9 * step / np.linalg.norm(step)
        if all(np.linalg.norm(cand - p) > 0.8 for p in pos):
            pos.append(cand)
    return "; ".join("H %.6f %.6f %.6f" % tuple(p) for p in pos)


# Pauli-count scaling family: H2 ... H8 (4 to 16 spin orbitals); odd clusters are cations
CLUSTERS = range(3, 9)

H2_SCAN = np.round(np.linspace(0.3, 2.5, 8), 4)
LIH_SCAN = np.round(np.linspace(1.0, 3.8, 8), 4)


def run(name, atom, basis, charge, fci_max_norb=9):
    mol = gto.M(atom=atom, basis=basis, charge=charge, spin=0, unit="Angstrom", verbose=0)
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.kernel()
    if not mf.converged:
        raise RuntimeError(f"RHF did not converge for {name}")
    path = OUT / f"{name}.fcidump"
    fcidump.from_scf(mf, str(path), tol=1e-14, float_format=" %.17g")
    norb = mf.mo_coeff.shape[1]
    meta = {
        "file": f"fcidump/{path.name}",
        "atom": atom,
        "basis": basis,
        "charge": charge,
        "n_spatial": int(norb),
        "n_electrons": int(mol.nelectron),
        "e_nuc": float(mol.energy_nuc()),
        "e_hf": float(mf.e_tot),
    }
    if norb <= fci_max_norb:
        cis = fci.FCI(mf)
        cis.conv_tol = 1e-12
        meta["e_fci"] = float(cis.kernel()[0])
    if name.startswith("lih"):
        # frozen Li 1s: exact energy inside the 5-orbital active space
        mc = mcscf.CASCI(mf, norb - 1, mol.nelectron - 2)
        mc.fcisolver.conv_tol = 1e-12
        meta["e_fci_frozen_core"] = float(mc.kernel()[0])
    return meta


def write_manifest(name, lengths):
    lines = ["# bond_length_angstrom  fcidump_path"]
    lines += [f"{r:.4f}  {name}_{r:.4f}.fcidump" for r in lengths]
    (OUT / f"{name}_scan.manifest").write_text("\n".join(lines) + "\n")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    meta = {}
    for name, (atom, basis, charge) in MOLECULES.items():
        meta[name] = run(name, atom, basis, charge)
        print(name, meta[name]["n_spatial"], meta[name]["e_hf"], meta[name].get("e_fci"))
    family = ["h2"]
    for k in CLUSTERS:
        key = f"hcluster{k}"
        meta[key] = run(key, hydrogen_cluster(k), "sto-3g", k % 2)
        family.append(key)
        print(key, meta[key]["n_spatial"], meta[key]["e_hf"], meta[key].get("e_fci"))
    meta["_scaling_family"] = family
    for r in H2_SCAN:
        key = f"h2_{r:.4f}"
        meta[key] = run(key, diatomic("H", "H", r), "sto-3g", 0)
        meta[key]["bond_length"] = float(r)
    for r in LIH_SCAN:
        key = f"lih_{r:.4f}"
        meta[key] = run(key, diatomic("Li", "H", r), "sto-3g", 0)
        meta[key]["bond_length"] = float(r)
    write_manifest("h2", H2_SCAN)
    write_manifest("lih", LIH_SCAN)
    (DATA / "fixtures.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
