"""Unitary coupled-cluster circuits."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..chem import Excitation
from ..encoding import EncodingScheme, encode
from ..pauli import PauliString
from ..sim.circuit import Circuit, basis_state_circuit


@dataclass(frozen=True)
class AnsatzSpec:
    level: str = "UCCSD"
    trotter_steps: int = 1

    def __post_init__(self):
        object.__setattr__(self, "level", self.level.upper())
        if self.level not in ("UCCS", "UCCSD"):
            raise ValueError(f"unknown ansatz level {self.level!r}")
        if self.trotter_steps < 1:
            raise ValueError("trotter_steps must be positive")


def encode_generator(exc: Excitation, scheme: EncodingScheme, n_spin_orbitals: int, n_electrons: int,
                     spin_z2: int = 0) -> list[tuple[PauliString, float]]:
    """Pauli terms of an anti-Hermitian generator as ``(P, a)`` with ``G = i * sum a P``."""
    g = encode(exc.generator, scheme, n_spin_orbitals, n_electrons, spin_z2)
    if np.any(np.abs(g.coeffs.real) > 1e-10):
        raise ValueError("generator does not encode to an anti-Hermitian operator")
    return [(p, float(c.imag)) for p, c in zip(g.paulis(), g.coeffs)]


def build_ansatz(
    generators: Sequence[Excitation],
    scheme: EncodingScheme,
    reference: Sequence[int],
    spec: AnsatzSpec = AnsatzSpec(),
    n_spin_orbitals: int | None = None,
    n_electrons: int | None = None,
    spin_z2: int = 0,
) -> Circuit:
    """Reference-state preparation followed by Trotterized UCC exponentials.

    ``exp(theta_k G_k)`` with ``G_k = i sum_j a_j P_j`` becomes one macro
    ``exp(-i (-2 a_j theta_k / r) / 2 P_j)`` per Pauli term and Trotter step,
    all sharing parameter slot ``k``. ``reference`` must be a bitstring in the
    same encoding (see :func:`vqemu.encoding.encode_reference_state`).
    """
    circ = basis_state_circuit(reference)
    if not generators:
        return circ
    if n_spin_orbitals is None:
        n_spin_orbitals = generators[0].generator.n_spin_orbitals
    if n_electrons is None:
        raise ValueError("n_electrons is required to encode the generators")
    encoded = [encode_generator(e, scheme, n_spin_orbitals, n_electrons, spin_z2) for e in generators]
    n_qubits = encoded[0][0][0].n_qubits
    if n_qubits != len(reference):
        raise ValueError(
            f"reference has {len(reference)} qubits but generators encode to {n_qubits} ({scheme.label})"
        )
    r = spec.trotter_steps
    for _ in range(r):
        for exc, terms in zip(generators, encoded):
            for p, a in terms:
                circ.pauli_exp(p, slot=exc.slot, scale=-2.0 * a / r)
    return circ
