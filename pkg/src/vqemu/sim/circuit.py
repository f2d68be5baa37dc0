"""Gate-level circuit representation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..pauli import PauliString, letters_to_masks, masks_to_letters

SINGLE_FIXED = ("h", "x", "y", "z", "s", "sdg")
SINGLE_ROTATIONS = ("rx", "ry", "rz", "p")
GATE_NAMES = SINGLE_FIXED + SINGLE_ROTATIONS + ("cx", "pauli_exp")


@dataclass(frozen=True)
class Gate:
    """One circuit instruction.

    Rotations carry a fixed ``angle``. ``pauli_exp`` applies
    ``exp(-i * angle / 2 * P)`` with ``angle = scale * params[slot]`` (or the
    fixed ``angle`` when ``slot`` is None) and ``P`` given by the masks.
    """

    name: str
    qubits: tuple[int, ...]
    angle: float | None = None
    slot: int | None = None
    scale: float = 1.0
    x: int = 0
    z: int = 0

    def __post_init__(self):
        if self.name not in GATE_NAMES:
            raise ValueError(f"unknown gate {self.name!r}")
        if self.name == "cx" and (len(self.qubits) != 2 or self.qubits[0] == self.qubits[1]):
            raise ValueError("cx needs two distinct qubits")
        if self.name in SINGLE_FIXED + SINGLE_ROTATIONS and len(self.qubits) != 1:
            raise ValueError(f"{self.name} acts on one qubit")
        if self.name in SINGLE_ROTATIONS and self.angle is None:
            raise ValueError(f"{self.name} needs an angle")
        if self.name == "pauli_exp" and self.slot is None and self.angle is None:
            raise ValueError("pauli_exp needs a slot or a fixed angle")

    def resolved_angle(self, params: Sequence[float]) -> float:
        if self.slot is None:
            return self.angle
        return self.scale * float(params[self.slot])


@dataclass
class Circuit:
    n_qubits: int
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        for g in self.gates:
            self._check(g)

    def _check(self, g: Gate) -> None:
        if any(not 0 <= q < self.n_qubits for q in g.qubits):
            raise ValueError(f"gate {g.name} on {g.qubits} outside {self.n_qubits} qubits")
        if (g.x | g.z) >> self.n_qubits:
            raise ValueError("Pauli mask outside the register")

    def append(self, gate: Gate) -> Circuit:
        self._check(gate)
        self.gates.append(gate)
        return self

    def extend(self, gates: Iterable[Gate]) -> Circuit:
        for g in gates:
            self.append(g)
        return self

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    # builders
    def gate(self, name: str, qubit: int, angle: float | None = None) -> Circuit:
        return self.append(Gate(name, (qubit,), angle))

    def cx(self, control: int, target: int) -> Circuit:
        return self.append(Gate("cx", (control, target)))

    def pauli_exp(self, pauli: PauliString | str, slot: int | None = None, scale: float = 1.0,
                  angle: float | None = None) -> Circuit:
        if isinstance(pauli, str):
            pauli = PauliString.from_letters(pauli)
        if pauli.n_qubits != self.n_qubits:
            raise ValueError("Pauli string size does not match the circuit")
        support = tuple(q for q in range(self.n_qubits) if ((pauli.x | pauli.z) >> q) & 1)
        return self.append(Gate("pauli_exp", support, angle, slot, scale, pauli.x, pauli.z))

    @property
    def n_params(self) -> int:
        slots = {g.slot for g in self.gates if g.slot is not None}
        if slots != set(range(len(slots))):
            raise ValueError("parameter slots are not a contiguous range from 0")
        return len(slots)

    def __add__(self, other: Circuit) -> Circuit:
        if other.n_qubits != self.n_qubits:
            raise ValueError("qubit count mismatch")
        return Circuit(self.n_qubits, self.gates + other.gates)

    def to_text(self) -> str:
        """Line-oriented dump: ``name qubits [angle=..|slot=.. scale=..] [pauli=..]``."""
        out = [f"qubits {self.n_qubits}"]
        for g in self.gates:
            parts = [g.name, ",".join(map(str, g.qubits))]
            if g.slot is not None:
                parts += [f"slot={g.slot}", f"scale={g.scale!r}"]
            elif g.angle is not None:
                parts.append(f"angle={g.angle!r}")
            if g.name == "pauli_exp":
                parts.append("pauli=" + masks_to_letters(g.x, g.z, self.n_qubits))
            out.append(" ".join(parts))
        return "\n".join(out) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Circuit:
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("qubits "):
            raise ValueError("circuit text must start with 'qubits <n>'")
        circ = cls(int(lines[0].split()[1]))
        for ln in lines[1:]:
            name, qubits, *rest = ln.split()
            kw = dict(item.split("=", 1) for item in rest)
            qs = tuple(int(q) for q in qubits.split(","))
            x = z = 0
            if "pauli" in kw:
                x, z = letters_to_masks(kw["pauli"])
            circ.append(
                Gate(
                    name,
                    qs,
                    float(kw["angle"]) if "angle" in kw else None,
                    int(kw["slot"]) if "slot" in kw else None,
                    float(kw.get("scale", 1.0)),
                    x,
                    z,
                )
            )
        return circ


def basis_state_circuit(bits: Sequence[int]) -> Circuit:
    """X gates preparing the computational basis state ``bits`` (qubit-0-first)."""
    c = Circuit(len(bits))
    for q, b in enumerate(bits):
        if b:
            c.gate("x", q)
    return c
