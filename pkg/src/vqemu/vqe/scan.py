"""Bond dissociation scans over a manifest of FCIDUMP geometries."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..chem import ActiveSpaceSpec, parse_fcidump, read_manifest
from ..encoding import EncodingScheme
from ..sim.exact import DENSE_CAP
from .ansatz import AnsatzSpec
from .driver import MolecularProblem, VQEResult
from .optimizers import OptimizerSpec

CSV_COLUMNS = ("bond_length_angstrom", "e_vqe_hartree", "e_exact_hartree", "e_hf_hartree", "n_evals", "wall_seconds")


class ManifestError(ValueError):
    """Manifest geometries disagree on orbital or electron counts."""


@dataclass
class ScanRow:
    bond_length: float
    e_vqe: float
    e_exact: float | None
    e_hf: float
    result: VQEResult = field(repr=False)

    @property
    def error(self) -> float | None:
        return None if self.e_exact is None else self.e_vqe - self.e_exact


def scan_dissociation(
    manifest: str | Path,
    active_space: ActiveSpaceSpec = ActiveSpaceSpec(),
    scheme: EncodingScheme = EncodingScheme("parity", True),
    ansatz: AnsatzSpec = AnsatzSpec(),
    optimizer: OptimizerSpec = OptimizerSpec(),
    mode: str = "exact",
    shots: int | None = None,
    warm_start: bool = True,
    exact_cap: int = DENSE_CAP,
) -> list[ScanRow]:
    """One VQE run per manifest geometry, in manifest order.

    With ``warm_start`` each geometry starts from the previous optimum;
    otherwise every run starts from the Hartree-Fock point.
    """
    entries = read_manifest(manifest)
    systems = [parse_fcidump(p) for _, p in entries]
    shape = {(s.n_spatial, s.n_electrons, s.spin_z2) for s in systems}
    if len(shape) > 1:
        raise ManifestError(f"{manifest}: geometries disagree on (orbitals, electrons, 2Sz): {sorted(shape)}")

    rows, x0 = [], None
    for (r, _), ints in zip(entries, systems):
        prob = MolecularProblem(ints, scheme, ansatz, active_space)
        res = prob.minimize(optimizer, mode, shots, x0 if warm_start else None)
        e_exact = prob.exact_energy if prob.hamiltonian.n_qubits <= exact_cap else None
        rows.append(ScanRow(r, res.energy, e_exact, prob.hf_energy, res))
        x0 = res.params
    return rows


def _fmt(v) -> str:
    return "" if v is None else repr(float(v))


def scan_to_csv(rows: list[ScanRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in rows:
        w.writerow([_fmt(row.bond_length), _fmt(row.e_vqe), _fmt(row.e_exact), _fmt(row.e_hf),
                    row.result.eval_count, _fmt(row.result.wall_time)])
    return buf.getvalue()


def scan_to_json(rows: list[ScanRow], meta: dict | None = None) -> str:
    doc = {
        "meta": meta or {},
        "rows": [
            {
                "bond_length_angstrom": row.bond_length,
                "e_vqe_hartree": row.e_vqe,
                "e_exact_hartree": row.e_exact,
                "e_hf_hartree": row.e_hf,
                "result": row.result.to_json(),
            }
            for row in rows
        ],
    }
    return json.dumps(doc, indent=2, default=lambda o: float(o) if isinstance(o, np.floating) else str(o)) + "\n"
