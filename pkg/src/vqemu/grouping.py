"""Qubit-wise commuting measurement plans.

A plan partitions the non-identity terms of a Hamiltonian into groups that
share one measurement basis. The greedy planner repeatedly picks the basis
covering the most still-uncovered terms and removes that family; the exact
planner solves the same partition problem by exhaustive search and is only
meant as a reference for small inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .pauli import PauliString, WeightedPauliSum, masks_to_letters, qubitwise_commutes
from .sim.circuit import Circuit

EXACT_MAX_TERMS = 20


@dataclass(frozen=True)
class MeasurementGroup:
    basis: PauliString
    members: tuple[int, ...]
    rotation: Circuit = field(compare=False, repr=False)


@dataclass(frozen=True)
class MeasurementPlan:
    """Groups over the term indices of ``hamiltonian``; the identity term is ``offset``."""

    hamiltonian: WeightedPauliSum = field(repr=False)
    groups: tuple[MeasurementGroup, ...]

    @property
    def n_groups(self) -> int:
        return len(self.groups)

    @property
    def n_terms_covered(self) -> int:
        return sum(len(g.members) for g in self.groups)

    @property
    def offset(self) -> float:
        return self.hamiltonian.constant().real

    @property
    def reduction_factor(self) -> float:
        return self.n_terms_covered / max(self.n_groups, 1)

    def validate(self) -> None:
        h = self.hamiltonian
        measured = set(np.flatnonzero((h.x | h.z) != 0).tolist())
        seen: list[int] = []
        for g in self.groups:
            paulis = [PauliString(h.n_qubits, int(h.x[i]), int(h.z[i])) for i in g.members]
            for p in paulis:
                if not covers(g.basis, p):
                    raise AssertionError(f"basis {g.basis.letters} does not cover {p.letters}")
            seen.extend(g.members)
        if len(seen) != len(set(seen)) or set(seen) != measured:
            raise AssertionError("groups are not a partition of the non-identity terms")

    def to_json(self) -> dict:
        return {
            "n_qubits": self.hamiltonian.n_qubits,
            "n_terms": self.n_terms_covered,
            "n_groups": self.n_groups,
            "offset": self.offset,
            "groups": [{"basis": g.basis.letters, "members": list(g.members)} for g in self.groups],
        }


def covers(basis: PauliString, p: PauliString) -> bool:
    """``p`` is measurable in ``basis``: every letter of ``p`` is I or equals the basis letter."""
    sup = p.x | p.z
    return not (((basis.x ^ p.x) | (basis.z ^ p.z)) & sup)


def rotation_circuit(basis: PauliString) -> Circuit:
    """Single-qubit gates taking the basis eigenstates to computational states.

    ``h`` on X qubits, ``rx(pi/2)`` on Y qubits, nothing on Z or I.
    """
    c = Circuit(basis.n_qubits)
    for q in range(basis.n_qubits):
        xb, zb = (basis.x >> q) & 1, (basis.z >> q) & 1
        if xb and zb:
            c.gate("rx", q, np.pi / 2)
        elif xb:
            c.gate("h", q)
    return c


def _make_group(n: int, bx: int, bz: int, members) -> MeasurementGroup:
    basis = PauliString(n, bx, bz)
    return MeasurementGroup(basis, tuple(sorted(int(m) for m in members)), rotation_circuit(basis))


def greedy_plan(h: WeightedPauliSum) -> MeasurementPlan:
    """Greedy set cover over qubit-wise commuting families.

    Every uncovered term seeds a candidate basis, which is completed by
    absorbing the compatible uncovered terms in lexicographic order. The
    candidate covering the most terms wins (ties: lexicographically smallest
    basis letters) and its family is removed before the next round.
    """
    if len(h) == 0:
        raise ValueError("empty Hamiltonian")
    n = h.n_qubits
    uncovered = np.flatnonzero((h.x | h.z) != 0)
    groups = []
    while uncovered.size:
        tx, tz = h.x[uncovered], h.z[uncovered]
        tsup = tx | tz
        bx, bz = tx.copy(), tz.copy()
        absorbed = np.zeros((uncovered.size, uncovered.size), dtype=bool)
        for k in range(uncovered.size):
            ok = (((bx ^ tx[k]) | (bz ^ tz[k])) & (bx | bz) & tsup[k]) == 0
            absorbed[:, k] = ok
            bx |= np.where(ok, tx[k], 0).astype(np.uint64)
            bz |= np.where(ok, tz[k], 0).astype(np.uint64)
        counts = absorbed.sum(axis=1)
        best = np.flatnonzero(counts == counts.max())
        if best.size > 1:
            letters = [masks_to_letters(int(bx[s]), int(bz[s]), n).replace("I", "~") for s in best]
            # qubit-0-first letter order with I sorting first
            keyed = sorted(zip([_letter_key(s) for s in letters], best))
            pick = keyed[0][1]
        else:
            pick = best[0]
        members = uncovered[absorbed[pick]]
        groups.append(_make_group(n, int(bx[pick]), int(bz[pick]), members))
        uncovered = uncovered[~absorbed[pick]]
    return MeasurementPlan(h, tuple(groups))


_ORDER = {"~": 0, "X": 1, "Y": 2, "Z": 3}


def _letter_key(letters: str) -> tuple[int, ...]:
    return tuple(_ORDER[ch] for ch in letters)


def _conflicts(paulis: list[PauliString]) -> list[set[int]]:
    m = len(paulis)
    adj = [set() for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            if not qubitwise_commutes(paulis[i], paulis[j]):
                adj[i].add(j)
                adj[j].add(i)
    return adj


def min_clique_cover(paulis: list[PauliString]) -> list[list[int]]:
    """Minimum partition into pairwise qubit-wise commuting classes (exhaustive)."""
    m = len(paulis)
    if m == 0:
        return []
    adj = _conflicts(paulis)
    order = sorted(range(m), key=lambda v: (-len(adj[v]), v))
    best: list[list[int]] = [[v] for v in order]

    def search(pos: int, classes: list[list[int]]):
        nonlocal best
        if len(classes) >= len(best):
            return
        if pos == m:
            best = [list(c) for c in classes]
            return
        v = order[pos]
        for c in classes:
            if not adj[v].intersection(c):
                c.append(v)
                search(pos + 1, classes)
                c.pop()
        classes.append([v])
        search(pos + 1, classes)
        classes.pop()

    search(0, [])
    return best


def exact_plan(h: WeightedPauliSum, max_terms: int = EXACT_MAX_TERMS) -> MeasurementPlan:
    """Minimum-cardinality qubit-wise commuting partition by exhaustive search."""
    idx = np.flatnonzero((h.x | h.z) != 0)
    if idx.size > max_terms:
        raise ValueError(f"exact planning is limited to {max_terms} terms, got {idx.size}")
    paulis = [PauliString(h.n_qubits, int(h.x[i]), int(h.z[i])) for i in idx]
    groups = []
    for cls in min_clique_cover(paulis):
        bx = bz = 0
        for v in cls:
            bx |= paulis[v].x
            bz |= paulis[v].z
        groups.append(_make_group(h.n_qubits, bx, bz, idx[cls]))
    groups.sort(key=lambda g: g.members[0])
    return MeasurementPlan(h, tuple(groups))
