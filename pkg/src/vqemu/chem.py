"""Molecular integrals, frozen-core reduction and second-quantized operators.

Spin orbitals use the blocked ordering: spatial orbital ``i`` gives spin
orbitals ``i`` (alpha) and ``i + n_spatial`` (beta). Two-electron integrals
are stored in physicists' notation, ``two_body[p, q, r, s] = <pq|rs> = (pr|qs)``,
and the electronic Hamiltonian is::

    H = core + sum_pq h_pq a+_p a_q + 1/2 sum_pqrs <pq|rs> a+_p a+_q a_s a_r
"""

from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

log = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-10


class FCIDUMPError(ValueError):
    """Malformed or inconsistent FCIDUMP input."""


@dataclass(frozen=True, eq=False)
class SpinOrbitalIntegrals:
    n_spatial: int
    n_electrons: int
    spin_z2: int
    core_energy: float
    one_body: np.ndarray
    two_body: np.ndarray

    def __post_init__(self):
        n = 2 * self.n_spatial
        if self.one_body.shape != (n, n) or self.two_body.shape != (n, n, n, n):
            raise ValueError("integral shapes do not match 2 * n_spatial spin orbitals")
        if not 0 <= self.n_electrons <= n:
            raise ValueError("electron count out of range")
        if (self.n_electrons + self.spin_z2) % 2 or abs(self.spin_z2) > self.n_electrons:
            raise ValueError("spin_z2 inconsistent with the electron count")

    @property
    def n_spin_orbitals(self) -> int:
        return 2 * self.n_spatial

    @property
    def n_alpha(self) -> int:
        return (self.n_electrons + self.spin_z2) // 2

    @property
    def n_beta(self) -> int:
        return (self.n_electrons - self.spin_z2) // 2

    def reference_occupation(self) -> np.ndarray:
        """Aufbau occupation vector over spin orbitals (alpha block, beta block)."""
        occ = np.zeros(self.n_spin_orbitals, dtype=np.int8)
        occ[: self.n_alpha] = 1
        occ[self.n_spatial : self.n_spatial + self.n_beta] = 1
        return occ

    def reference_energy(self) -> float:
        """Energy of the aufbau determinant."""
        occ = np.flatnonzero(self.reference_occupation())
        h = self.one_body[occ][:, occ]
        g = self.two_body[np.ix_(occ, occ, occ, occ)]
        coulomb = np.einsum("ijij->", g)
        exchange = np.einsum("ijji->", g)
        return float(self.core_energy + np.trace(h) + 0.5 * (coulomb - exchange))

    def spatial(self) -> tuple[np.ndarray, np.ndarray]:
        """Spatial one-electron matrix and chemists' ``(ij|kl)`` tensor."""
        m = self.n_spatial
        h = self.one_body[:m, :m]
        eri = self.two_body[:m, :m, :m, :m].transpose(0, 2, 1, 3)
        return h.copy(), eri.copy()

    def same_values(self, other: SpinOrbitalIntegrals) -> bool:
        return (
            self.n_spatial == other.n_spatial
            and self.n_electrons == other.n_electrons
            and self.spin_z2 == other.spin_z2
            and self.core_energy == other.core_energy
            and np.array_equal(self.one_body, other.one_body)
            and np.array_equal(self.two_body, other.two_body)
        )


def from_spatial(h1, eri, n_electrons: int, spin_z2: int = 0, core_energy: float = 0.0) -> SpinOrbitalIntegrals:
    """Expand spatial integrals (chemists' ``eri``) into blocked spin orbitals."""
    h1 = np.asarray(h1, dtype=float)
    eri = np.asarray(eri, dtype=float)
    m = h1.shape[0]
    spin_one = np.kron(np.eye(2), h1)
    phys = eri.transpose(0, 2, 1, 3)
    two = np.zeros((2 * m,) * 4)
    for s, t in itertools.product((0, 1), repeat=2):
        a, b = slice(s * m, (s + 1) * m), slice(t * m, (t + 1) * m)
        two[a, b, a, b] = phys
    return SpinOrbitalIntegrals(m, n_electrons, spin_z2, float(core_energy), spin_one, two)


# FCIDUMP

def _parse_header(text: str, lineno: int) -> dict:
    body = re.sub(r"^\s*&FCI", "", text, flags=re.IGNORECASE)
    body = re.sub(r"(&END|/)\s*$", "", body.strip(), flags=re.IGNORECASE)
    parts = re.split(r"([A-Za-z_][A-Za-z_0-9]*)\s*=", body)
    if parts[0].strip(" ,\n"):
        raise FCIDUMPError(f"line {lineno}: unexpected header content {parts[0].strip()!r}")
    header = {}
    for key, value in zip(parts[1::2], parts[2::2]):
        items = [v for v in re.split(r"[,\s]+", value.strip()) if v]
        try:
            header[key.upper()] = [int(v) for v in items]
        except ValueError:
            raise FCIDUMPError(f"line {lineno}: non-integer value for {key}") from None
    for key in ("NORB", "NELEC"):
        if key not in header or len(header[key]) != 1:
            raise FCIDUMPError(f"line {lineno}: header is missing {key}")
    if header.get("UHF", [0])[0]:
        raise FCIDUMPError(f"line {lineno}: UHF integrals are not supported")
    return header


def _store(arr, idx_list, value, lineno, what):
    for idx in idx_list:
        old = arr[idx]
        if not np.isnan(old) and abs(old - value) > SYMMETRY_TOL:
            raise FCIDUMPError(f"line {lineno}: {what} {tuple(i + 1 for i in idx)} conflicts with an earlier entry")
        arr[idx] = value


def parse_fcidump(source: str | bytes | Path) -> SpinOrbitalIntegrals:
    """Read FCIDUMP text (or a path to it) into spin-orbital integrals."""
    if isinstance(source, Path):
        source = source.read_text()
    if isinstance(source, bytes):
        source = source.decode()
    lines = source.splitlines()
    end = next((k for k, ln in enumerate(lines) if re.search(r"(&END|^\s*/\s*$)", ln, re.IGNORECASE)), None)
    if not lines or not re.match(r"\s*&FCI", lines[0], re.IGNORECASE) or end is None:
        raise FCIDUMPError("line 1: missing &FCI ... &END header")
    header = _parse_header("\n".join(lines[: end + 1]), 1)
    norb, nelec = header["NORB"][0], header["NELEC"][0]
    ms2 = header.get("MS2", [0])[0]
    if norb < 1 or nelec < 0 or nelec > 2 * norb:
        raise FCIDUMPError("line 1: NORB/NELEC out of range")

    h1 = np.full((norb, norb), np.nan)
    eri = np.full((norb,) * 4, np.nan)
    core = np.full((), np.nan)
    for k, line in enumerate(lines[end + 1 :], start=end + 2):
        if not line.strip():
            continue
        fields = line.split()
        if len(fields) != 5:
            raise FCIDUMPError(f"line {k}: expected 'value i j k l', got {line.strip()!r}")
        try:
            value = float(fields[0].replace("D", "E").replace("d", "e"))
            i, j, a, b = (int(f) for f in fields[1:])
        except ValueError:
            raise FCIDUMPError(f"line {k}: cannot parse {line.strip()!r}") from None
        if not all(0 <= t <= norb for t in (i, j, a, b)):
            raise FCIDUMPError(f"line {k}: orbital index out of range 1..{norb}")
        if i and j and a and b:
            i, j, a, b = i - 1, j - 1, a - 1, b - 1
            perms = {(i, j, a, b), (j, i, a, b), (i, j, b, a), (j, i, b, a),
                     (a, b, i, j), (b, a, i, j), (a, b, j, i), (b, a, j, i)}
            _store(eri, perms, value, k, "two-electron integral")
        elif i and j and not a and not b:
            _store(h1, {(i - 1, j - 1), (j - 1, i - 1)}, value, k, "one-electron integral")
        elif not (i or j or a or b):
            _store(core, [()], value, k, "core energy")
        elif i and not (j or a or b):
            continue  # orbital energy, not needed
        else:
            raise FCIDUMPError(f"line {k}: unrecognised index pattern {fields[1:]}")
    h1 = np.nan_to_num(h1, nan=0.0)
    eri = np.nan_to_num(eri, nan=0.0)
    core = 0.0 if np.isnan(core) else float(core)
    return from_spatial(h1, eri, nelec, ms2, core)


def write_fcidump(ints: SpinOrbitalIntegrals, tol: float = 0.0) -> str:
    """Serialize to FCIDUMP text (unique entries of the eightfold symmetry)."""
    h1, eri = ints.spatial()
    m = ints.n_spatial
    out = [
        f" &FCI NORB={m},NELEC={ints.n_electrons},MS2={ints.spin_z2},",
        "  ORBSYM=" + "1," * m,
        "  ISYM=1,",
        " &END",
    ]
    for i in range(m):
        for j in range(i + 1):
            for k in range(m):
                for l in range(k + 1):
                    if i * (i + 1) // 2 + j < k * (k + 1) // 2 + l:
                        continue
                    v = eri[i, j, k, l]
                    if v != 0.0 and abs(v) > tol:
                        out.append(f"{float(v)!r} {i + 1} {j + 1} {k + 1} {l + 1}")
    for i in range(m):
        for j in range(i + 1):
            if h1[i, j] != 0.0 and abs(h1[i, j]) > tol:
                out.append(f"{float(h1[i, j])!r} {i + 1} {j + 1} 0 0")
    out.append(f"{float(ints.core_energy)!r} 0 0 0 0")
    return "\n".join(out) + "\n"


def read_manifest(path: str | Path) -> list[tuple[float, Path]]:
    """Read ``bond_length path`` lines; relative paths resolve against the manifest."""
    path = Path(path)
    rows = []
    for k, line in enumerate(path.read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        if len(parts) != 2:
            raise ValueError(f"{path}:{k}: expected 'bond_length path'")
        try:
            r = float(parts[0])
        except ValueError:
            raise ValueError(f"{path}:{k}: bad bond length {parts[0]!r}") from None
        p = Path(parts[1].strip())
        rows.append((r, p if p.is_absolute() else path.parent / p))
    if not rows:
        raise ValueError(f"{path}: empty manifest")
    return rows


# active space

@dataclass(frozen=True)
class ActiveSpaceSpec:
    frozen_occupied: tuple[int, ...] = ()
    removed_virtual: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "frozen_occupied", tuple(sorted(self.frozen_occupied)))
        object.__setattr__(self, "removed_virtual", tuple(sorted(self.removed_virtual)))

    @property
    def is_empty(self) -> bool:
        return not self.frozen_occupied and not self.removed_virtual


def apply_active_space(ints: SpinOrbitalIntegrals, spec: ActiveSpaceSpec) -> SpinOrbitalIntegrals:
    """Fold frozen doubly occupied orbitals into the core and drop removed virtuals."""
    if spec.is_empty:
        return ints
    m = ints.n_spatial
    frozen, removed = set(spec.frozen_occupied), set(spec.removed_virtual)
    if frozen & removed:
        raise ValueError("frozen and removed orbital sets overlap")
    if any(not 0 <= i < m for i in frozen | removed):
        raise ValueError(f"active-space orbital index out of range 0..{m - 1}")
    n_docc = min(ints.n_alpha, ints.n_beta)
    if any(i >= n_docc for i in frozen):
        raise ValueError("frozen orbitals must be doubly occupied in the reference")
    if any(i < max(ints.n_alpha, ints.n_beta) for i in removed):
        raise ValueError("removed orbitals must be unoccupied in the reference")

    active = [i for i in range(m) if i not in frozen and i not in removed]
    f_so = [i + s * m for s in (0, 1) for i in sorted(frozen)]
    a_so = [i + s * m for s in (0, 1) for i in active]
    g = ints.two_body

    core = ints.core_energy
    if f_so:
        gf = g[np.ix_(f_so, f_so, f_so, f_so)]
        core += np.trace(ints.one_body[np.ix_(f_so, f_so)])
        core += 0.5 * (np.einsum("ijij->", gf) - np.einsum("ijji->", gf))
        # inactive Fock contribution of the frozen core
        coul = np.einsum("piqi->pq", g[np.ix_(a_so, f_so, a_so, f_so)])
        exch = np.einsum("piiq->pq", g[np.ix_(a_so, f_so, f_so, a_so)])
        one = ints.one_body[np.ix_(a_so, a_so)] + coul - exch
    else:
        one = ints.one_body[np.ix_(a_so, a_so)]
    two = g[np.ix_(a_so, a_so, a_so, a_so)]
    return SpinOrbitalIntegrals(
        len(active), ints.n_electrons - 2 * len(frozen), ints.spin_z2, float(core), one.copy(), two.copy()
    )


# fermion operators

Ladder = tuple[int, bool]  # (spin-orbital index, is_creation)


def _normal_order_term(ops: tuple[Ladder, ...], coeff: complex) -> list[tuple[tuple[Ladder, ...], complex]]:
    """Normal order one product of ladder operators.

    Creations move left of annihilations and both blocks end up ascending by
    index. Repeated indices within a block vanish; anticommutation
    contractions are emitted as extra, shorter terms.
    """
    out = []
    stack = [(list(ops), coeff)]
    while stack:
        seq, c = stack.pop()
        swapped = False
        for k in range(len(seq) - 1):
            (p, dp), (q, dq) = seq[k], seq[k + 1]
            if not dp and dq:
                # a_p a+_q = delta_pq - a+_q a_p
                swap = seq[:k] + [seq[k + 1], seq[k]] + seq[k + 2 :]
                stack.append((swap, -c))
                if p == q:
                    stack.append((seq[:k] + seq[k + 2 :], c))
                swapped = True
                break
            if dp == dq and p == q:
                swapped = True  # a+_p a+_p = 0
                break
            if dp == dq and p > q:
                swap = seq[:k] + [seq[k + 1], seq[k]] + seq[k + 2 :]
                stack.append((swap, -c))
                swapped = True
                break
        if not swapped:
            out.append((tuple(seq), c))
    return out


@dataclass
class FermionOperatorSum:
    """Sum of normal-ordered ladder-operator products plus a scalar.

    ``terms`` maps a tuple of ``(index, is_creation)`` pairs (creations first,
    each block ascending) to its coefficient.
    """

    n_spin_orbitals: int
    terms: dict[tuple[Ladder, ...], complex] = field(default_factory=dict)
    constant: complex = 0.0

    def add(self, ops: Sequence[Ladder], coeff: complex) -> None:
        ops = tuple((int(i), bool(d)) for i, d in ops)
        if any(not 0 <= i < self.n_spin_orbitals for i, _ in ops):
            raise ValueError("ladder index out of range")
        for key, c in _normal_order_term(ops, coeff):
            if not key:
                self.constant += c
            else:
                self.terms[key] = self.terms.get(key, 0.0) + c

    def __add__(self, other: FermionOperatorSum) -> FermionOperatorSum:
        out = FermionOperatorSum(max(self.n_spin_orbitals, other.n_spin_orbitals), dict(self.terms), self.constant)
        for k, v in other.terms.items():
            out.terms[k] = out.terms.get(k, 0.0) + v
        out.constant += other.constant
        return out

    def __mul__(self, scalar) -> FermionOperatorSum:
        return FermionOperatorSum(self.n_spin_orbitals, {k: v * scalar for k, v in self.terms.items()}, self.constant * scalar)

    __rmul__ = __mul__

    def __sub__(self, other: FermionOperatorSum) -> FermionOperatorSum:
        return self + other * -1

    def adjoint(self) -> FermionOperatorSum:
        out = FermionOperatorSum(self.n_spin_orbitals, constant=np.conj(self.constant))
        for ops, c in self.terms.items():
            out.add([(i, not d) for i, d in reversed(ops)], np.conj(c))
        return out

    def pruned(self, tol: float = 1e-14) -> FermionOperatorSum:
        return FermionOperatorSum(
            self.n_spin_orbitals, {k: v for k, v in self.terms.items() if abs(v) > tol}, self.constant
        )

    def __len__(self) -> int:
        return len(self.terms)


def build_hamiltonian(ints: SpinOrbitalIntegrals, tol: float = 1e-14) -> FermionOperatorSum:
    """Second-quantized electronic Hamiltonian including the core constant."""
    n = ints.n_spin_orbitals
    op = FermionOperatorSum(n, constant=ints.core_energy)
    for p, q in zip(*np.nonzero(np.abs(ints.one_body) > tol)):
        op.add([(p, True), (q, False)], ints.one_body[p, q])
    g = ints.two_body
    for p, q, r, s in zip(*np.nonzero(np.abs(g) > tol)):
        if p == q or r == s:
            continue
        op.add([(p, True), (q, True), (s, False), (r, False)], 0.5 * g[p, q, r, s])
    return op.pruned()


def number_operator(n_spin_orbitals: int, orbitals: Iterable[int] | None = None) -> FermionOperatorSum:
    op = FermionOperatorSum(n_spin_orbitals)
    for p in range(n_spin_orbitals) if orbitals is None else orbitals:
        op.add([(p, True), (p, False)], 1.0)
    return op


def spin_z_operator(n_spatial: int) -> FermionOperatorSum:
    """Twice S_z, i.e. N_alpha - N_beta."""
    return number_operator(2 * n_spatial, range(n_spatial)) - number_operator(2 * n_spatial, range(n_spatial, 2 * n_spatial))


@dataclass(frozen=True)
class Excitation:
    """A spin-preserving excitation ``occupied -> virtual`` with its parameter slot."""

    occupied: tuple[int, ...]
    virtual: tuple[int, ...]
    slot: int
    generator: FermionOperatorSum = field(compare=False, repr=False)

    @property
    def rank(self) -> int:
        return len(self.occupied)


def _spin(p: int, m: int) -> int:
    return p // m


def build_ucc_generators(ints: SpinOrbitalIntegrals, level: str = "UCCSD") -> list[Excitation]:
    """Anti-Hermitian generators ``T_k - T_k^+`` for singles (and doubles).

    Singles are enumerated first (occupied, then virtual, ascending), then
    doubles; each generator owns one parameter slot.
    """
    level = level.upper()
    if level not in ("UCCS", "UCCSD"):
        raise ValueError(f"unknown UCC level {level!r}")
    if ints.spin_z2 != 0:
        raise ValueError("open-shell references (MS2 != 0) are not supported")
    m, n = ints.n_spatial, ints.n_spin_orbitals
    occ_vec = ints.reference_occupation()
    occ = [p for p in range(n) if occ_vec[p]]
    vir = [p for p in range(n) if not occ_vec[p]]
    if not occ or not vir:
        log.warning("no %s generators: %d occupied, %d virtual spin orbitals", level, len(occ), len(vir))
        return []

    found = []
    for i in occ:
        for a in vir:
            if _spin(i, m) == _spin(a, m):
                found.append(((i,), (a,)))
    if level == "UCCSD":
        for i, j in itertools.combinations(occ, 2):
            for a, b in itertools.combinations(vir, 2):
                if sorted((_spin(i, m), _spin(j, m))) == sorted((_spin(a, m), _spin(b, m))):
                    found.append(((i, j), (a, b)))

    out = []
    for slot, (o, v) in enumerate(found):
        t = FermionOperatorSum(n)
        t.add([(p, True) for p in v] + [(p, False) for p in reversed(o)], 1.0)
        out.append(Excitation(o, v, slot, (t - t.adjoint()).pruned()))
    log.info("%s: %d generators", level, len(out))
    return out
