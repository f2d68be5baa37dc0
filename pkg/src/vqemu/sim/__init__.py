"""Circuit IR, statevector simulation, transpilation and exact diagonalization.

Shot sampling lives in :mod:`vqemu.sim.sampling`, which depends on the
measurement plans of :mod:`vqemu.grouping`.
"""

from .circuit import Circuit, Gate, basis_state_circuit
from .exact import exact_ground_energy, sector_indices, spectrum
from .statevector import expectation, expectation_state, run
from .transpile import GateCounts, transpile, transpile_and_count

__all__ = [
    "Circuit",
    "Gate",
    "GateCounts",
    "basis_state_circuit",
    "exact_ground_energy",
    "expectation",
    "expectation_state",
    "run",
    "sector_indices",
    "spectrum",
    "transpile",
    "transpile_and_count",
]
