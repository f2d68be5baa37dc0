"""Exact diagonalization of qubit Hamiltonians, optionally inside a symmetry sector."""

from __future__ import annotations

from typing import Sequence

import numpy as np
import scipy.sparse.linalg as spla

from ..pauli import DENSE_CAP, WeightedPauliSum

DENSE_EIGH_MAX = 2048


def diagonal_values(op: WeightedPauliSum) -> np.ndarray:
    """Eigenvalue of a Z-only operator on every computational basis state."""
    if np.any(op.x):
        raise ValueError("sector operators must be diagonal (I/Z letters only)")
    idx = np.arange(1 << op.n_qubits, dtype=np.int64)
    out = np.zeros(idx.size)
    for z, c in zip(op.z.astype(np.int64), op.coeffs.real):
        out += c * (1.0 - 2.0 * (np.bitwise_count(idx & z) & 1))
    return out


def sector_indices(n_qubits: int, constraints: Sequence[tuple[WeightedPauliSum, float]]) -> np.ndarray:
    """Basis indices where every diagonal operator takes its requested value."""
    keep = np.ones(1 << n_qubits, dtype=bool)
    for op, value in constraints:
        if op.n_qubits != n_qubits:
            raise ValueError("sector operator size mismatch")
        keep &= np.abs(diagonal_values(op) - value) < 1e-9
    return np.flatnonzero(keep)


def _block(h: WeightedPauliSum, indices, cap: int):
    if h.n_qubits > cap:
        raise ValueError(f"{h.n_qubits} qubits exceeds the dense cap of {cap}")
    m = h.sparse_matrix()
    return m if indices is None else m[indices][:, indices]


def spectrum(h: WeightedPauliSum, indices=None, cap: int = DENSE_CAP) -> np.ndarray:
    """All eigenvalues (ascending) of ``h``, or of its restriction to ``indices``."""
    return np.linalg.eigvalsh(_block(h, indices, cap).toarray())


def exact_ground_energy(h: WeightedPauliSum, indices=None, cap: int = DENSE_CAP) -> float:
    """Lowest eigenvalue of ``h`` including its identity offset.

    ``indices`` restricts the search to a set of basis states, e.g. a
    particle-number sector from :func:`sector_indices`; the caller is
    responsible for that block being invariant under ``h``.
    """
    if not h.is_hermitian:
        raise ValueError("exact diagonalization requires a Hermitian operator")
    block = _block(h, indices, cap)
    dim = block.shape[0]
    if dim == 0:
        raise ValueError("empty sector")
    if dim <= DENSE_EIGH_MAX:
        return float(np.linalg.eigvalsh(block.toarray())[0])
    vals = spla.eigsh(block, k=1, which="SA", tol=1e-12, return_eigenvectors=False)
    return float(vals[0])


def block_leakage(h: WeightedPauliSum, indices) -> float:
    """Largest matrix element coupling the sector to its complement."""
    m = h.sparse_matrix().tocsc()
    mask = np.zeros(m.shape[0], dtype=bool)
    mask[indices] = True
    off = m[~mask][:, mask]
    return float(np.abs(off.data).max()) if off.nnz else 0.0
