"""Bitwise algebra of multi-qubit Pauli operators.

A Pauli string on ``n`` qubits is stored in symplectic form as two integer
bitmasks ``x`` and ``z``; bit ``k`` refers to qubit ``k``. The letter on a qubit
is read off the bit pair ``(x, z)``::

    (0, 0) -> I    (1, 0) -> X    (1, 1) -> Y    (0, 1) -> Z

Letters are always the Hermitian Pauli matrices, so the operator represented
by ``(x, z)`` is ``i**popcount(x & z) * X**x Z**z``. Qubit 0 is the least
significant bit of every computational-basis index.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np
import scipy.sparse as sp

DROP_TOL = 1e-12
HERMITIAN_TOL = 1e-10
DENSE_CAP = 16

_LETTER = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
_BITS = {v: k for k, v in _LETTER.items()}
_PHASE_TEXT = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_PHASE_PARSE = {"+": 0, "": 0, "+1": 0, "-": 2, "-1": 2, "+i": 1, "i": 1, "-i": 3}
_UNITS = np.array([1, 1j, -1, -1j])


def letters_to_masks(letters: str) -> tuple[int, int]:
    """Convert a qubit-0-first letter string such as ``"XZIY"`` to ``(x, z)``."""
    x = z = 0
    for k, ch in enumerate(letters.upper()):
        try:
            bx, bz = _BITS[ch]
        except KeyError:
            raise ValueError(f"invalid Pauli letter {ch!r} in {letters!r}") from None
        x |= bx << k
        z |= bz << k
    return x, z


def masks_to_letters(x: int, z: int, n_qubits: int) -> str:
    return "".join(_LETTER[((x >> k) & 1, (z >> k) & 1)] for k in range(n_qubits))


def product_phase(x1: int, z1: int, x2: int, z2: int) -> int:
    """Power of ``i`` picked up when multiplying two letter strings.

    ``P(x1, z1) P(x2, z2) = i**k P(x1 ^ x2, z1 ^ z2)`` with ``k`` returned mod 4.
    """
    x3, z3 = x1 ^ x2, z1 ^ z2
    k = (x1 & z1).bit_count() + (x2 & z2).bit_count() + 2 * (z1 & x2).bit_count()
    return (k - (x3 & z3).bit_count()) % 4


def product_phase_array(x1, z1, x2, z2) -> np.ndarray:
    """Vectorised :func:`product_phase` over ``uint64`` mask arrays."""
    bc = np.bitwise_count
    k = bc(x1 & z1).astype(np.int64) + bc(x2 & z2) + 2 * bc(z1 & x2).astype(np.int64)
    return (k - bc((x1 ^ x2) & (z1 ^ z2))) % 4


@dataclass(frozen=True)
class PauliString:
    """A Pauli string with a phase from ``{+1, +i, -1, -i}``.

    ``phase`` is the power of ``i``. Equality compares letters and phase.
    """

    n_qubits: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        if (self.x | self.z) >> self.n_qubits:
            raise ValueError("mask has bits beyond n_qubits")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def from_letters(cls, letters: str, phase: int = 0) -> PauliString:
        x, z = letters_to_masks(letters)
        return cls(len(letters), x, z, phase)

    @classmethod
    def parse(cls, text: str) -> PauliString:
        """Parse the text rendering, e.g. ``"+i XZY"`` or ``"-ZZ"``."""
        m = re.fullmatch(r"\s*([+-]?i?|[+-]1)\s*([IXYZixyz]+)\s*", text)
        if m is None or m.group(1) not in _PHASE_PARSE:
            raise ValueError(f"cannot parse Pauli string {text!r}")
        return cls.from_letters(m.group(2), _PHASE_PARSE[m.group(1)])

    @property
    def letters(self) -> str:
        return masks_to_letters(self.x, self.z, self.n_qubits)

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    @property
    def unit(self) -> complex:
        return complex(_UNITS[self.phase])

    def __str__(self) -> str:
        return f"{_PHASE_TEXT[self.phase]} {self.letters}"

    def __mul__(self, other: PauliString) -> PauliString:
        return multiply(self, other)


def _check_same_size(a: PauliString, b: PauliString) -> None:
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"qubit count mismatch: {a.n_qubits} != {b.n_qubits}")


def multiply(a: PauliString, b: PauliString) -> PauliString:
    _check_same_size(a, b)
    k = product_phase(a.x, a.z, b.x, b.z)
    return PauliString(a.n_qubits, a.x ^ b.x, a.z ^ b.z, a.phase + b.phase + k)


def qubitwise_commutes(a: PauliString, b: PauliString) -> bool:
    """True if on every qubit the letters agree or one of them is I."""
    _check_same_size(a, b)
    support = (a.x | a.z) & (b.x | b.z)
    return not (((a.x ^ b.x) | (a.z ^ b.z)) & support)


def general_commutes(a: PauliString, b: PauliString) -> bool:
    """True if the strings anticommute on an even number of qubits."""
    _check_same_size(a, b)
    return ((a.x & b.z).bit_count() + (a.z & b.x).bit_count()) % 2 == 0


class WeightedPauliSum:
    """A linear combination of Pauli letter strings with complex coefficients.

    Terms are kept merged (one coefficient per letter string), with
    coefficients below ``drop_tol`` in magnitude removed, and sorted
    lexicographically by their qubit-0-first letter string. The arrays
    ``x``, ``z`` (``uint64``) and ``coeffs`` (``complex128``) are read-only.
    """

    def __init__(self, n_qubits: int, x=(), z=(), coeffs=(), *, drop_tol: float = DROP_TOL):
        if n_qubits < 1 or n_qubits > 64:
            raise ValueError("n_qubits must be in [1, 64]")
        x = np.asarray(x, dtype=np.uint64).ravel()
        z = np.asarray(z, dtype=np.uint64).ravel()
        c = np.asarray(coeffs, dtype=np.complex128).ravel()
        if not (len(x) == len(z) == len(c)):
            raise ValueError("x, z and coeffs must have equal length")
        if len(x) and int((x | z).max()) >> n_qubits:
            raise ValueError("mask has bits beyond n_qubits")
        self.n_qubits = n_qubits
        self.drop_tol = drop_tol
        self.x, self.z, self.coeffs = _merge(n_qubits, x, z, c, drop_tol)
        for arr in (self.x, self.z, self.coeffs):
            arr.setflags(write=False)
        self._matrix = None

    @classmethod
    def from_dict(cls, terms: Mapping[str, complex], n_qubits: int | None = None, **kw):
        items = list(terms.items())
        if n_qubits is None:
            if not items:
                raise ValueError("n_qubits required for an empty sum")
            n_qubits = len(items[0][0])
        masks = [letters_to_masks(k) for k, _ in items]
        if any(len(k) != n_qubits for k, _ in items):
            raise ValueError("letter strings must all have length n_qubits")
        return cls(n_qubits, [m[0] for m in masks], [m[1] for m in masks], [v for _, v in items], **kw)

    @classmethod
    def from_pauli(cls, p: PauliString, coeff: complex = 1.0) -> WeightedPauliSum:
        return cls(p.n_qubits, [p.x], [p.z], [coeff * p.unit])

    @classmethod
    def identity(cls, n_qubits: int, coeff: complex = 1.0) -> WeightedPauliSum:
        return cls(n_qubits, [0], [0], [coeff])

    # container protocol
    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self) -> Iterator[tuple[str, complex]]:
        return iter(self.items())

    def items(self) -> list[tuple[str, complex]]:
        n = self.n_qubits
        return [(masks_to_letters(int(a), int(b), n), complex(c)) for a, b, c in zip(self.x, self.z, self.coeffs)]

    def to_dict(self) -> dict[str, complex]:
        return dict(self.items())

    @property
    def terms(self) -> dict[str, complex]:
        return self.to_dict()

    def paulis(self) -> list[PauliString]:
        return [PauliString(self.n_qubits, int(a), int(b)) for a, b in zip(self.x, self.z)]

    @property
    def is_hermitian(self) -> bool:
        return bool(np.all(np.abs(self.coeffs.imag) <= HERMITIAN_TOL))

    def constant(self) -> complex:
        """Coefficient of the all-identity term."""
        hit = (self.x == 0) & (self.z == 0)
        return complex(self.coeffs[hit].sum())

    def without_identity(self) -> WeightedPauliSum:
        keep = (self.x | self.z) != 0
        return WeightedPauliSum(self.n_qubits, self.x[keep], self.z[keep], self.coeffs[keep], drop_tol=self.drop_tol)

    def real(self) -> WeightedPauliSum:
        """Drop imaginary round-off from a Hermitian sum; raises if not Hermitian."""
        if not self.is_hermitian:
            raise ValueError("sum has non-negligible imaginary coefficients")
        return WeightedPauliSum(self.n_qubits, self.x, self.z, self.coeffs.real, drop_tol=self.drop_tol)

    # arithmetic
    def _coerce(self, other) -> WeightedPauliSum:
        if isinstance(other, WeightedPauliSum):
            if other.n_qubits != self.n_qubits:
                raise ValueError("qubit count mismatch")
            return other
        if isinstance(other, PauliString):
            return WeightedPauliSum.from_pauli(other)
        if np.isscalar(other):
            return WeightedPauliSum.identity(self.n_qubits, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return WeightedPauliSum(
            self.n_qubits,
            np.concatenate([self.x, other.x]),
            np.concatenate([self.z, other.z]),
            np.concatenate([self.coeffs, other.coeffs]),
            drop_tol=self.drop_tol,
        )

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-1) * self._coerce(other)

    def __rsub__(self, other):
        return (-1) * self + other

    def __mul__(self, other):
        if np.isscalar(other):
            return WeightedPauliSum(self.n_qubits, self.x, self.z, self.coeffs * other, drop_tol=self.drop_tol)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.compose(other)

    def __rmul__(self, other):
        if np.isscalar(other):
            return self * other
        return NotImplemented

    def compose(self, other: WeightedPauliSum) -> WeightedPauliSum:
        """Operator product ``self @ other`` (self acts last)."""
        x1, x2 = np.meshgrid(self.x, other.x, indexing="ij")
        z1, z2 = np.meshgrid(self.z, other.z, indexing="ij")
        c = np.outer(self.coeffs, other.coeffs)
        c = c * _UNITS[product_phase_array(x1, z1, x2, z2)]
        return WeightedPauliSum(self.n_qubits, x1 ^ x2, z1 ^ z2, c, drop_tol=self.drop_tol)

    __matmul__ = compose

    def adjoint(self) -> WeightedPauliSum:
        return WeightedPauliSum(self.n_qubits, self.x, self.z, self.coeffs.conj(), drop_tol=self.drop_tol)

    def equals(self, other: WeightedPauliSum, atol: float = 1e-10) -> bool:
        diff = self - other
        return bool(np.all(np.abs(diff.coeffs) <= atol))

    def __eq__(self, other):
        if not isinstance(other, WeightedPauliSum):
            return NotImplemented
        return (
            self.n_qubits == other.n_qubits
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.z, other.z)
            and np.array_equal(self.coeffs, other.coeffs)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"WeightedPauliSum(n_qubits={self.n_qubits}, n_terms={len(self)})"

    def to_text(self) -> str:
        """One ``coefficient letters`` line per term, lexicographic order."""
        lines = []
        for letters, c in self.items():
            coeff = f"{c.real:+.16e}" if c.imag == 0 else f"({c.real:+.16e}{c.imag:+.16e}j)"
            lines.append(f"{coeff} {letters}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> WeightedPauliSum:
        """Inverse of :meth:`to_text`; blank lines and ``#`` comments are skipped."""
        terms: dict[str, complex] = {}
        n = None
        for k, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"line {k}: expected 'coefficient letters'")
            try:
                c = complex(parts[0])
            except ValueError:
                raise ValueError(f"line {k}: bad coefficient {parts[0]!r}") from None
            letters = parts[1].upper()
            if set(letters) - set("IXYZ"):
                raise ValueError(f"line {k}: bad Pauli letters {parts[1]!r}")
            if n is not None and len(letters) != n:
                raise ValueError(f"line {k}: {len(letters)} qubits, expected {n}")
            n = len(letters)
            terms[letters] = terms.get(letters, 0) + c
        if n is None:
            raise ValueError("no terms")
        return cls.from_dict(terms, n_qubits=n)

    def to_json(self) -> dict:
        return {
            "n_qubits": self.n_qubits,
            "terms": [{"pauli": k, "re": v.real, "im": v.imag} for k, v in self.items()],
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> WeightedPauliSum:
        terms = {t["pauli"]: complex(t["re"], t.get("im", 0.0)) for t in doc["terms"]}
        return cls.from_dict(terms, n_qubits=doc["n_qubits"])

    def sparse_matrix(self) -> sp.csr_matrix:
        """Sparse ``2**n x 2**n`` matrix, cached on the instance."""
        if self._matrix is None:
            self._matrix = _assemble(self)
        return self._matrix


def _merge(n_qubits, x, z, c, drop_tol):
    if len(c) == 0:
        return x, z, c
    # sort key: lexicographic on letters with qubit 0 first
    codes = _letter_codes(x, z, n_qubits)
    order = np.lexsort(codes.T[::-1])
    codes, x, z, c = codes[order], x[order], z[order], c[order]
    new = np.ones(len(c), dtype=bool)
    new[1:] = np.any(codes[1:] != codes[:-1], axis=1)
    starts = np.flatnonzero(new)
    summed = np.add.reduceat(c, starts)
    keep = np.abs(summed) > drop_tol
    return x[starts][keep].copy(), z[starts][keep].copy(), summed[keep]


def _letter_codes(x, z, n_qubits):
    """Per-qubit letter codes with I < X < Y < Z, shape ``(terms, n_qubits)``."""
    shifts = np.arange(n_qubits, dtype=np.uint64)
    bx = ((x[:, None] >> shifts) & np.uint64(1)).astype(np.int8)
    bz = ((z[:, None] >> shifts) & np.uint64(1)).astype(np.int8)
    # I=0, X=1, Y=2, Z=3
    return bx + bz * (3 - 2 * bx)


def _assemble(h: WeightedPauliSum) -> sp.csr_matrix:
    dim = 1 << h.n_qubits
    cols = np.arange(dim, dtype=np.int64)
    rows_all, cols_all, vals_all = [], [], []
    xs = h.x.astype(np.int64)
    zs = h.z.astype(np.int64)
    for xm in np.unique(xs):
        sel = xs == xm
        diag = np.zeros(dim, dtype=np.complex128)
        for zm, c in zip(zs[sel], h.coeffs[sel]):
            phase = _UNITS[int(xm & zm).bit_count() % 4]
            parity = np.bitwise_count(cols & zm) & 1
            diag += c * phase * (1 - 2 * parity.astype(np.float64))
        rows_all.append(cols ^ xm)
        cols_all.append(cols)
        vals_all.append(diag)
    if not rows_all:
        return sp.csr_matrix((dim, dim), dtype=np.complex128)
    m = sp.csr_matrix(
        (np.concatenate(vals_all), (np.concatenate(rows_all), np.concatenate(cols_all))), shape=(dim, dim)
    )
    m.eliminate_zeros()
    return m


def to_dense_matrix(h: WeightedPauliSum, cap: int = DENSE_CAP) -> np.ndarray:
    """Dense matrix of ``h`` with qubit 0 as the least significant index bit."""
    if h.n_qubits > cap:
        raise ValueError(f"{h.n_qubits} qubits exceeds the dense cap of {cap}")
    return h.sparse_matrix().toarray()


def pauli_sum(terms: Iterable[tuple[complex, str]], n_qubits: int | None = None) -> WeightedPauliSum:
    """Build a sum from ``(coefficient, letters)`` pairs; repeated letters are merged."""
    terms = list(terms)
    if n_qubits is None:
        n_qubits = len(terms[0][1])
    masks = [letters_to_masks(p) for _, p in terms]
    return WeightedPauliSum(n_qubits, [m[0] for m in masks], [m[1] for m in masks], [c for c, _ in terms])
