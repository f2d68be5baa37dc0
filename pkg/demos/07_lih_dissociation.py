"""
LiH bond dissociation with UCCS and UCCSD
=========================================

An eight-point scan with the Li 1s orbital frozen. Each geometry starts from
the converged amplitudes of the previous one. Singles alone cannot describe
the stretched bond, so UCCS drifts away from the exact curve as R grows.
Takes about a minute.
"""
from vqemu import fixtures
from vqemu.chem import ActiveSpaceSpec
from vqemu.vqe import AnsatzSpec, scan_dissociation

scans = {level: scan_dissociation(fixtures.manifest("lih"), ActiveSpaceSpec((0,)), ansatz=AnsatzSpec(level))
         for level in ("UCCSD", "UCCS")}

print(f"{'R/A':>5} {'exact':>14} {'UCCSD err':>11} {'UCCS err':>11}")
for d, s in zip(scans["UCCSD"], scans["UCCS"]):
    print(f"{d.bond_length:5.2f} {d.e_exact:14.8f} {d.error:11.2e} {s.error:11.2e}")
