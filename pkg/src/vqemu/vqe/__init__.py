"""Ansatz construction, optimizers, dissociation scans and parallel measurement."""

from .ansatz import AnsatzSpec, build_ansatz
from .driver import MolecularProblem, VQEResult, minimize
from .optimizers import OptimizerDivergence, OptimizerSpec
from .parallel import GroupPool, benchmark_throughput, parallel_energy
from .scan import ManifestError, ScanRow, scan_dissociation, scan_to_csv, scan_to_json

__all__ = [
    "AnsatzSpec",
    "GroupPool",
    "ManifestError",
    "MolecularProblem",
    "OptimizerDivergence",
    "OptimizerSpec",
    "ScanRow",
    "VQEResult",
    "benchmark_throughput",
    "build_ansatz",
    "minimize",
    "parallel_energy",
    "scan_dissociation",
    "scan_to_csv",
    "scan_to_json",
]
