"""VQE energy minimization."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from ..chem import (
    ActiveSpaceSpec,
    SpinOrbitalIntegrals,
    apply_active_space,
    build_hamiltonian,
    build_ucc_generators,
    number_operator,
    spin_z_operator,
)
from ..encoding import EncodingScheme, encode, encode_reference_state
from ..grouping import MeasurementPlan, greedy_plan
from ..pauli import WeightedPauliSum
from ..sim.circuit import Circuit
from ..sim.exact import exact_ground_energy, sector_indices
from ..sim.sampling import sample_state
from ..sim.statevector import expectation_state, run
from .ansatz import AnsatzSpec, build_ansatz
from .optimizers import OptimizerSpec, run_optimizer


@dataclass
class VQEResult:
    energy: float
    params: np.ndarray
    eval_count: int
    wall_time: float
    trace: list[tuple[int, float]]
    converged: bool = False
    message: str = ""
    optimizer: str = ""
    mode: str = "exact"

    def best_so_far(self) -> np.ndarray:
        return np.minimum.accumulate([e for _, e in self.trace])

    def evals_to_reach(self, threshold: float) -> int | None:
        """1-based number of evaluations until an energy at or below ``threshold``."""
        for k, e in self.trace:
            if e <= threshold:
                return k + 1
        return None

    def to_json(self) -> dict:
        return {
            "energy": self.energy,
            "params": [float(t) for t in self.params],
            "eval_count": self.eval_count,
            "wall_time": self.wall_time,
            "converged": self.converged,
            "message": self.message,
            "optimizer": self.optimizer,
            "mode": self.mode,
            "trace": [[k, e] for k, e in self.trace],
        }


def minimize(
    h: WeightedPauliSum,
    plan: MeasurementPlan | None,
    ansatz: Circuit,
    optimizer: OptimizerSpec = OptimizerSpec(),
    mode: str = "exact",
    shots: int | None = None,
    x0: Sequence[float] | None = None,
) -> VQEResult:
    """Minimize ``<ansatz(theta)|h|ansatz(theta)>`` starting from ``x0`` (zeros by default).

    ``mode="exact"`` uses the statevector expectation; ``mode="sampled"``
    estimates each evaluation from ``shots`` samples per measurement group,
    with a distinct seed per evaluation derived from ``optimizer.seed``.
    """
    if ansatz.n_qubits != h.n_qubits:
        raise ValueError(f"ansatz has {ansatz.n_qubits} qubits, Hamiltonian has {h.n_qubits}")
    n_params = ansatz.n_params
    x0 = np.zeros(n_params) if x0 is None else np.asarray(x0, dtype=float)
    if x0.size != n_params:
        raise ValueError(f"x0 has {x0.size} entries, ansatz has {n_params} parameters")
    h = h.real() if np.iscomplexobj(h.coeffs) else h

    if mode == "exact":
        def energy(theta):
            return expectation_state(run(ansatz, theta), h)
    elif mode == "sampled":
        if not shots or shots < 1:
            raise ValueError("sampled mode needs a positive shot count")
        plan = plan if plan is not None else greedy_plan(h)
        counter = iter(range(1 << 62))

        def energy(theta):
            seed = optimizer.seed * 1_000_003 + next(counter)
            return sample_state(run(ansatz, theta), plan, shots, seed).energy
    else:
        raise ValueError(f"unknown mode {mode!r}")

    out = run_optimizer(energy, x0, optimizer)
    return VQEResult(
        energy=out.fun,
        params=out.x,
        eval_count=out.n_evals,
        wall_time=out.wall_time,
        trace=out.trace,
        converged=out.converged,
        message=out.message,
        optimizer=optimizer.note,
        mode=mode,
    )


@dataclass
class MolecularProblem:
    """Everything needed to run VQE on one geometry, derived from its integrals."""

    integrals: SpinOrbitalIntegrals
    scheme: EncodingScheme = field(default_factory=lambda: EncodingScheme("parity", True))
    ansatz_spec: AnsatzSpec = field(default_factory=AnsatzSpec)
    active_space: ActiveSpaceSpec = field(default_factory=ActiveSpaceSpec)

    @cached_property
    def reduced(self) -> SpinOrbitalIntegrals:
        return apply_active_space(self.integrals, self.active_space)

    def _encode(self, op) -> WeightedPauliSum:
        r = self.reduced
        return encode(op, self.scheme, r.n_spin_orbitals, r.n_electrons, r.spin_z2)

    @cached_property
    def hamiltonian(self) -> WeightedPauliSum:
        return self._encode(build_hamiltonian(self.reduced)).real()

    @cached_property
    def reference(self):
        r = self.reduced
        return encode_reference_state(r.n_spin_orbitals, r.n_electrons, self.scheme, r.spin_z2)

    @cached_property
    def generators(self):
        return build_ucc_generators(self.reduced, self.ansatz_spec.level)

    @cached_property
    def ansatz(self) -> Circuit:
        r = self.reduced
        return build_ansatz(self.generators, self.scheme, self.reference, self.ansatz_spec,
                            r.n_spin_orbitals, r.n_electrons, r.spin_z2)

    @cached_property
    def sector(self) -> np.ndarray:
        """Basis indices with the reference particle number and spin projection."""
        r = self.reduced
        n_op = self._encode(number_operator(r.n_spin_orbitals)).real()
        sz_op = self._encode(spin_z_operator(r.n_spatial)).real()
        return sector_indices(self.hamiltonian.n_qubits, [(n_op, r.n_electrons), (sz_op, r.spin_z2)])

    @cached_property
    def exact_energy(self) -> float:
        return exact_ground_energy(self.hamiltonian, self.sector)

    @property
    def hf_energy(self) -> float:
        return self.reduced.reference_energy()

    @cached_property
    def plan(self) -> MeasurementPlan:
        return greedy_plan(self.hamiltonian)

    def energy(self, params) -> float:
        return expectation_state(run(self.ansatz, params), self.hamiltonian)

    def minimize(self, optimizer: OptimizerSpec = OptimizerSpec(), mode: str = "exact", shots: int | None = None,
                 x0=None) -> VQEResult:
        return minimize(self.hamiltonian, self.plan if mode == "sampled" else None, self.ansatz, optimizer,
                        mode, shots, x0)
