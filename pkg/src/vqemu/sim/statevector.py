"""Exact statevector simulation.

States are complex ``numpy`` vectors of length ``2**n`` indexed with qubit 0
as the least significant bit. Single-qubit gates act in place on a
``(2**(n-q-1), 2, 2**q)`` view; Pauli exponentials use the closed form
``cos(a/2) psi - i sin(a/2) P psi``.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..pauli import WeightedPauliSum, _UNITS
from .circuit import Circuit, Gate

QUBIT_CAP = 24
NORM_TOL = 1e-10

_S2 = 1 / np.sqrt(2)
FIXED = {
    "h": np.array([[_S2, _S2], [_S2, -_S2]], dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
    "s": np.array([[1, 0], [0, 1j]], dtype=complex),
    "sdg": np.array([[1, 0], [0, -1j]], dtype=complex),
}


def rotation_matrix(name: str, angle: float) -> np.ndarray:
    c, s = np.cos(angle / 2), np.sin(angle / 2)
    if name == "rx":
        return np.array([[c, -1j * s], [-1j * s, c]])
    if name == "ry":
        return np.array([[c, -s], [s, c]], dtype=complex)
    if name == "rz":
        return np.array([[np.exp(-0.5j * angle), 0], [0, np.exp(0.5j * angle)]])
    if name == "p":
        return np.array([[1, 0], [0, np.exp(1j * angle)]])
    raise ValueError(name)


def zero_state(n_qubits: int, index: int = 0) -> np.ndarray:
    if n_qubits > QUBIT_CAP:
        raise ValueError(f"{n_qubits} qubits exceeds the simulator cap of {QUBIT_CAP}")
    psi = np.zeros(1 << n_qubits, dtype=np.complex128)
    psi[index] = 1.0
    return psi


def apply_1q(psi: np.ndarray, u: np.ndarray, q: int) -> None:
    n = psi.size.bit_length() - 1
    v = psi.reshape(1 << (n - q - 1), 2, 1 << q)
    a0, a1 = v[:, 0, :].copy(), v[:, 1, :]
    v[:, 0, :] = u[0, 0] * a0 + u[0, 1] * a1
    v[:, 1, :] = u[1, 0] * a0 + u[1, 1] * a1


def apply_cx(psi: np.ndarray, control: int, target: int) -> None:
    n = psi.size.bit_length() - 1
    t = psi.reshape([2] * n)
    # axis k of the tensor is qubit n-1-k
    ca, ta = n - 1 - control, n - 1 - target
    idx = [slice(None)] * n
    idx[ca] = 1
    sub = t[tuple(idx)]
    ta_sub = ta if ta < ca else ta - 1
    sub_view = np.moveaxis(sub, ta_sub, 0)
    sub_view[[0, 1]] = sub_view[[1, 0]]


def pauli_action(psi: np.ndarray, x: int, z: int) -> np.ndarray:
    """Return ``P psi`` for the letter string with masks ``(x, z)``."""
    idx = np.arange(psi.size, dtype=np.int64)
    unit = _UNITS[(x & z).bit_count() % 4]
    sign = 1 - 2 * (np.bitwise_count(idx & z) & 1).astype(np.int8)
    v = psi * sign
    return unit * v[idx ^ x]


def apply_pauli_exp(psi: np.ndarray, x: int, z: int, angle: float) -> None:
    p_psi = pauli_action(psi, x, z)
    psi *= np.cos(angle / 2)
    psi += (-1j * np.sin(angle / 2)) * p_psi


def apply_gate(psi: np.ndarray, g: Gate, params: Sequence[float] = ()) -> None:
    if g.name == "cx":
        apply_cx(psi, *g.qubits)
    elif g.name == "pauli_exp":
        apply_pauli_exp(psi, g.x, g.z, g.resolved_angle(params))
    elif g.name in FIXED:
        apply_1q(psi, FIXED[g.name], g.qubits[0])
    else:
        apply_1q(psi, rotation_matrix(g.name, g.angle), g.qubits[0])


def run(circuit: Circuit, params: Sequence[float] = (), initial: int | Sequence[int] | np.ndarray = 0) -> np.ndarray:
    """Simulate ``circuit`` and return the final state vector.

    ``initial`` is a basis index, a qubit-0-first bitstring, or a full state.
    """
    params = np.asarray(params, dtype=float).ravel()
    if len(params) != circuit.n_params:
        raise ValueError(f"expected {circuit.n_params} parameters, got {len(params)}")
    n = circuit.n_qubits
    if isinstance(initial, np.ndarray) and initial.dtype.kind == "c":
        if initial.size != 1 << n:
            raise ValueError("initial state has the wrong dimension")
        psi = initial.astype(np.complex128, copy=True)
    elif isinstance(initial, (int, np.integer)):
        psi = zero_state(n, int(initial))
    else:
        psi = zero_state(n, sum(int(b) << k for k, b in enumerate(initial)))
    for g in circuit.gates:
        apply_gate(psi, g, params)
    return psi


def expectation_state(psi: np.ndarray, h: WeightedPauliSum) -> float:
    """Termwise exact ``<psi|H|psi>`` (real part) for a Hermitian ``h``."""
    if psi.size != 1 << h.n_qubits:
        raise ValueError("qubit count mismatch between state and operator")
    if not h.is_hermitian:
        raise ValueError("expectation requires a Hermitian operator")
    return float(np.vdot(psi, h.sparse_matrix() @ psi).real)


def expectation(circuit: Circuit, params: Sequence[float], h: WeightedPauliSum, plan=None,
                initial: int | Sequence[int] = 0) -> float:
    """Exact energy of the prepared state, termwise or through a measurement plan."""
    if circuit.n_qubits != h.n_qubits:
        raise ValueError("qubit count mismatch between circuit and operator")
    psi = run(circuit, params, initial)
    if plan is None:
        return expectation_state(psi, h)
    from .sampling import plan_expectation_state

    return plan_expectation_state(psi, plan)
