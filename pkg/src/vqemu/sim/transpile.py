"""Expansion of Pauli-exponential macros into single-qubit and CX gates."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .circuit import Circuit, Gate

HALF_PI = np.pi / 2


@dataclass(frozen=True)
class GateCounts:
    g1: int
    g2: int
    q: int

    def __post_init__(self):
        if min(self.g1, self.g2, self.q) < 0:
            raise ValueError("gate counts must be nonnegative")

    def to_json(self) -> str:
        return json.dumps(asdict(self))


def expand_pauli_exp(g: Gate) -> list[Gate]:
    """Basis change, CX ladder onto the last support qubit, Rz, then the mirror image.

    Parameterized macros keep their slot on the central ``rz`` so the expanded
    circuit can still be run with the same parameter vector.
    """
    support = list(g.qubits)
    if not support:
        return []
    pre, post = [], []
    for q in support:
        xb, zb = (g.x >> q) & 1, (g.z >> q) & 1
        if xb and zb:
            pre.append(Gate("rx", (q,), HALF_PI))
            post.append(Gate("rx", (q,), -HALF_PI))
        elif xb:
            pre.append(Gate("h", (q,)))
            post.append(Gate("h", (q,)))
    ladder = [Gate("cx", (a, b)) for a, b in zip(support[:-1], support[1:])]
    center = Gate("pauli_exp", (support[-1],), g.angle, g.slot, g.scale, 0, 1 << support[-1])
    return pre + ladder + [center] + ladder[::-1] + post


def transpile(c: Circuit) -> Circuit:
    """Circuit with every multi-qubit Pauli exponential expanded.

    The remaining single-qubit ``pauli_exp`` gates are Z rotations
    (``rz`` by a possibly parameterized angle).
    """
    out = Circuit(c.n_qubits)
    for g in c.gates:
        out.extend(expand_pauli_exp(g) if g.name == "pauli_exp" else [g])
    return out


def transpile_and_count(c: Circuit, fuse_single_qubit: bool = True) -> GateCounts:
    """Upper-bound single-qubit and CX counts of the expanded circuit.

    With ``fuse_single_qubit`` (the default) every maximal run of
    single-qubit gates on one qubit, uninterrupted by a CX on that qubit,
    counts once: it compiles to a single U1/U2/U3 gate. Without it every
    expanded single-qubit gate counts.
    """
    g1 = g2 = 0
    open_run = [False] * c.n_qubits
    for g in transpile(c).gates:
        if g.name == "cx":
            g2 += 1
            for q in g.qubits:
                open_run[q] = False
        elif not fuse_single_qubit or not open_run[g.qubits[0]]:
            g1 += 1
            open_run[g.qubits[0]] = True
    return GateCounts(g1, g2, c.n_qubits)
