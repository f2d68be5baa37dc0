"""Fermion-to-qubit encodings.

All three encodings are linear maps of the occupation vector, ``b = A n (mod 2)``:
the identity for Jordan-Wigner, prefix sums for parity, and the Fenwick tree
for Bravyi-Kitaev. For an invertible ``A`` the Majorana operators have a closed
form in symplectic notation,

    c_j = a_j + a+_j      ->  X^(A e_j) Z^(pi_j A^-1)
    d_j = i (a+_j - a_j)  ->  i X^(A e_j) Z^((pi_j + e_j) A^-1)

where ``pi_j`` marks the orbitals below ``j``. Ladder operators follow as
``a_j = (c_j + i d_j) / 2``, so one code path serves every scheme.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chem import FermionOperatorSum
from .pauli import WeightedPauliSum, product_phase_array, _UNITS

KINDS = ("jordan_wigner", "parity", "bravyi_kitaev")


@dataclass(frozen=True)
class EncodingScheme:
    kind: str = "parity"
    taper_two_qubits: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown encoding {self.kind!r}; expected one of {KINDS}")
        if self.taper_two_qubits and self.kind != "parity":
            raise ValueError("two-qubit tapering requires the parity encoding")

    @classmethod
    def parse(cls, text: str) -> EncodingScheme:
        """``jordan_wigner``, ``parity``, ``parity+taper``, ``bravyi_kitaev`` (``jw``/``bk`` accepted)."""
        text = text.strip().lower()
        taper = text.endswith("+taper")
        kind = text.removesuffix("+taper")
        kind = {"jw": "jordan_wigner", "bk": "bravyi_kitaev"}.get(kind, kind)
        return cls(kind, taper)

    @property
    def label(self) -> str:
        return self.kind + ("+taper" if self.taper_two_qubits else "")


def encoding_matrix(kind: str, n: int) -> np.ndarray:
    """Binary matrix ``A`` with ``b = A n mod 2``."""
    if kind == "jordan_wigner":
        return np.eye(n, dtype=np.uint8)
    if kind == "parity":
        return np.tril(np.ones((n, n), dtype=np.uint8))
    if kind == "bravyi_kitaev":
        a = np.zeros((n, n), dtype=np.uint8)
        for i in range(n):
            a[i, i & (i + 1) : i + 1] = 1
        return a
    raise ValueError(f"unknown encoding {kind!r}")


def gf2_inverse(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    aug = np.concatenate([a.astype(np.uint8) % 2, np.eye(n, dtype=np.uint8)], axis=1)
    for col in range(n):
        pivots = np.flatnonzero(aug[col:, col]) + col
        if len(pivots) == 0:
            raise ValueError("encoding matrix is singular over GF(2)")
        aug[[col, pivots[0]]] = aug[[pivots[0], col]]
        for r in np.flatnonzero(aug[:, col]):
            if r != col:
                aug[r] ^= aug[col]
    return aug[:, n:]


def _bits_to_mask(row) -> int:
    return sum(1 << k for k in np.flatnonzero(row))


@dataclass(frozen=True)
class _Majoranas:
    """Symplectic data for ``a_j = sum_k coeff[j, k] * P(x[j], z[j, k])``, k in {c, d}."""

    x: np.ndarray  # (n,)
    z: np.ndarray  # (n, 2)
    coeff: np.ndarray  # (n, 2, 2): [annihilation/creation, c/d]


def _majoranas(kind: str, n: int) -> _Majoranas:
    a = encoding_matrix(kind, n)
    a_inv = gf2_inverse(a)
    xs = np.zeros(n, dtype=np.uint64)
    zs = np.zeros((n, 2), dtype=np.uint64)
    coeff = np.zeros((n, 2, 2), dtype=np.complex128)
    for j in range(n):
        below = np.zeros(n, dtype=np.uint8)
        below[:j] = 1
        upto = below.copy()
        upto[j] = 1
        x = _bits_to_mask(a[:, j])
        zc = _bits_to_mask(below @ a_inv % 2)
        zd = _bits_to_mask(upto @ a_inv % 2)
        xs[j], zs[j] = x, (zc, zd)
        # X^x Z^z = i^-popcount(x & z) P(x, z)
        c_unit = _UNITS[(-(x & zc).bit_count()) % 4]
        d_unit = 1j * _UNITS[(-(x & zd).bit_count()) % 4]
        # a = (c + i d)/2, a+ = (c - i d)/2
        coeff[j, 0] = 0.5 * c_unit, 0.5j * d_unit
        coeff[j, 1] = 0.5 * c_unit, -0.5j * d_unit
    return _Majoranas(xs, zs, coeff)


def _encode_products(maj: _Majoranas, n: int, ops: np.ndarray, dag: np.ndarray, coeffs: np.ndarray):
    """Encode a batch of equal-length ladder products; returns flat (x, z, c)."""
    n_terms, length = ops.shape
    x = np.zeros(n_terms, dtype=np.uint64)
    z = np.zeros((n_terms, 1), dtype=np.uint64)
    c = coeffs.astype(np.complex128)[:, None]
    for k in range(length):
        idx, d = ops[:, k], dag[:, k].astype(int)
        xk = maj.x[idx]  # (T,)
        zk = maj.z[idx]  # (T, 2)
        ck = maj.coeff[idx, d]  # (T, 2)
        # cartesian product with the running expansion
        z_old = z[:, :, None]
        ph = product_phase_array(x[:, None, None], z_old, xk[:, None, None], zk[:, None, :])
        c = (c[:, :, None] * ck[:, None, :] * _UNITS[ph]).reshape(n_terms, -1)
        z = (z_old ^ zk[:, None, :]).reshape(n_terms, -1)
        x = x ^ xk
    width = z.shape[1]
    return np.repeat(x, width), z.ravel(), c.ravel()


def _taper(h: WeightedPauliSum, qubits: list[int], eigenvalues: list[int]) -> WeightedPauliSum:
    n = h.n_qubits
    x, z, c = h.x.copy(), h.z.copy(), h.coeffs.copy()
    for q, ev in zip(qubits, eigenvalues):
        bit = np.uint64(1 << q)
        if np.any(x & bit):
            raise ValueError(f"operator is not diagonal on tapered qubit {q}")
        c = np.where(z & bit, c * ev, c)
        z = z & ~bit
    keep = [q for q in range(n) if q not in qubits]
    nx = np.zeros_like(x)
    nz = np.zeros_like(z)
    for new, old in enumerate(keep):
        nx |= ((x >> np.uint64(old)) & np.uint64(1)) << np.uint64(new)
        nz |= ((z >> np.uint64(old)) & np.uint64(1)) << np.uint64(new)
    return WeightedPauliSum(len(keep), nx, nz, c, drop_tol=h.drop_tol)


def tapered_qubits(n_spin_orbitals: int) -> list[int]:
    """Qubits holding alpha-sector and total parity under blocked parity encoding."""
    if n_spin_orbitals % 2:
        raise ValueError("tapering needs blocked spin ordering with an even spin-orbital count")
    m = n_spin_orbitals // 2
    return [m - 1, 2 * m - 1]


def taper_eigenvalues(n_electrons: int, spin_z2: int = 0) -> list[int]:
    n_alpha = (n_electrons + spin_z2) // 2
    return [(-1) ** n_alpha, (-1) ** n_electrons]


def encode(
    op: FermionOperatorSum,
    scheme: EncodingScheme,
    n_spin_orbitals: int | None = None,
    n_electrons: int | None = None,
    spin_z2: int = 0,
) -> WeightedPauliSum:
    """Map a fermion operator to a qubit operator under ``scheme``.

    ``n_electrons`` (and ``spin_z2``) fix the sector eigenvalues substituted
    for the two qubits removed by parity tapering.
    """
    n = op.n_spin_orbitals if n_spin_orbitals is None else n_spin_orbitals
    if any(i >= n for key in op.terms for i, _ in key):
        raise ValueError("operator index exceeds n_spin_orbitals")
    maj = _majoranas(scheme.kind, n)
    xs, zs, cs = [np.zeros(1, dtype=np.uint64)], [np.zeros(1, dtype=np.uint64)], [np.array([op.constant], dtype=complex)]
    by_len: dict[int, list] = {}
    for key, coeff in op.terms.items():
        by_len.setdefault(len(key), []).append((key, coeff))
    for length, items in sorted(by_len.items()):
        ops = np.array([[i for i, _ in key] for key, _ in items], dtype=np.int64).reshape(len(items), length)
        dag = np.array([[d for _, d in key] for key, _ in items], dtype=bool).reshape(len(items), length)
        coeffs = np.array([c for _, c in items], dtype=np.complex128)
        x, z, c = _encode_products(maj, n, ops, dag, coeffs)
        xs.append(x)
        zs.append(z)
        cs.append(c)
    h = WeightedPauliSum(n, np.concatenate(xs), np.concatenate(zs), np.concatenate(cs))
    if scheme.taper_two_qubits:
        if n_electrons is None:
            raise ValueError("tapering needs n_electrons to fix the sector")
        h = _taper(h, tapered_qubits(n), taper_eigenvalues(n_electrons, spin_z2))
    return h


def encode_occupation(occupation, scheme: EncodingScheme) -> np.ndarray:
    """Qubit bitstring (qubit-0-first) representing an occupation vector."""
    occ = np.asarray(occupation, dtype=np.uint8)
    bits = encoding_matrix(scheme.kind, len(occ)) @ occ % 2
    if scheme.taper_two_qubits:
        drop = tapered_qubits(len(occ))
        bits = np.delete(bits, drop)
    return bits.astype(np.uint8)


def encode_reference_state(n_spin_orbitals: int, n_electrons: int, scheme: EncodingScheme, spin_z2: int = 0) -> np.ndarray:
    """Bitstring of the aufbau determinant (alpha and beta blocks filled from the bottom)."""
    if not 0 <= n_electrons <= n_spin_orbitals or n_spin_orbitals % 2:
        raise ValueError("need an even spin-orbital count and 0 <= n_electrons <= n_spin_orbitals")
    m = n_spin_orbitals // 2
    n_alpha, n_beta = (n_electrons + spin_z2) // 2, (n_electrons - spin_z2) // 2
    if n_alpha > m or n_beta > m or n_alpha + n_beta != n_electrons:
        raise ValueError("electron count and spin_z2 do not fit the orbital space")
    occ = np.zeros(n_spin_orbitals, dtype=np.uint8)
    occ[:n_alpha] = 1
    occ[m : m + n_beta] = 1
    return encode_occupation(occ, scheme)


def bits_to_index(bits) -> int:
    return sum(int(b) << k for k, b in enumerate(bits))
