"""Measurement groups fanned out over worker processes.

The plan is shipped to each worker once, at pool start-up. Per evaluation
the prepared state is broadcast, worker ``w`` estimates the contiguous block
of at most ``ceil(N_p / P)`` groups assigned to it, and the parent sums the
group results in plan order. Because every group draws from its own
counter-based stream, the energy is bit-identical for any worker count.
"""

from __future__ import annotations

import math
import multiprocessing as mp
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..grouping import MeasurementPlan
from ..pauli import WeightedPauliSum
from ..sim.circuit import Circuit
from ..sim.sampling import EnergyEstimate, GroupEstimate, combine, estimate_group
from ..sim.statevector import run

_WORKER_PLAN: MeasurementPlan | None = None


def assign_groups(n_groups: int, workers: int) -> list[range]:
    """Contiguous blocks of at most ``ceil(n_groups / workers)`` groups; idle workers get empty ranges."""
    if workers < 1:
        raise ValueError("workers must be at least 1")
    k = max(1, math.ceil(n_groups / workers))
    return [range(min(w * k, n_groups), min((w + 1) * k, n_groups)) for w in range(workers)]


def _init_worker(plan: MeasurementPlan) -> None:
    global _WORKER_PLAN
    _WORKER_PLAN = plan


def _work(psi: np.ndarray, indices: range, shots: int, seed: int) -> list[GroupEstimate]:
    return [estimate_group(psi, _WORKER_PLAN, k, shots, seed) for k in indices]


def default_workers() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)


class GroupPool:
    """Persistent worker pool bound to one measurement plan."""

    def __init__(self, plan: MeasurementPlan, workers: int):
        if workers < 1:
            raise ValueError("workers must be at least 1")
        self.plan = plan
        self.workers = workers
        self.blocks = assign_groups(plan.n_groups, workers)
        self._pool = None
        if workers > 1:
            method = "fork" if "fork" in mp.get_all_start_methods() else "spawn"
            self._pool = ProcessPoolExecutor(
                max_workers=workers, mp_context=mp.get_context(method), initializer=_init_worker, initargs=(plan,)
            )

    def estimate(self, psi: np.ndarray, shots: int, seed: int = 0) -> EnergyEstimate:
        if shots < 1:
            raise ValueError("shots must be positive")
        if self._pool is None:
            ests = [estimate_group(psi, self.plan, k, shots, seed) for k in range(self.plan.n_groups)]
        else:
            futures = [self._pool.submit(_work, psi, block, shots, seed) for block in self.blocks if len(block)]
            ests = [e for f in futures for e in f.result()]
        return combine(self.plan, ests, shots)

    def close(self) -> None:
        if self._pool is not None:
            self._pool.shutdown()
            self._pool = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def parallel_energy(h: WeightedPauliSum, plan: MeasurementPlan, circuit: Circuit, params: Sequence[float],
                    shots: int, workers: int = 1, seed: int = 0) -> EnergyEstimate:
    """Sampled energy with measurement groups spread over ``workers`` processes."""
    if plan.hamiltonian is not h and not plan.hamiltonian.equals(h, atol=0.0):
        raise ValueError("plan was built for a different Hamiltonian")
    psi = run(circuit, params)
    with GroupPool(plan, workers) as pool:
        return pool.estimate(psi, shots, seed)


@dataclass(frozen=True)
class ThroughputRow:
    workers: int
    evals_per_hour: float
    seconds_per_eval: float
    energy: float
    max_groups_per_worker: int


def benchmark_throughput(plan: MeasurementPlan, circuit: Circuit, params: Sequence[float], shots: int,
                         worker_counts: Sequence[int], n_evals: int = 5, seed: int = 0) -> list[ThroughputRow]:
    """Energy evaluations per hour for each worker count (state preparation included)."""
    rows = []
    for p in worker_counts:
        with GroupPool(plan, p) as pool:
            pool.estimate(run(circuit, params), shots, seed)  # warm-up: worker start-up excluded
            t0 = time.perf_counter()
            for _ in range(n_evals):
                est = pool.estimate(run(circuit, params), shots, seed)
            dt = (time.perf_counter() - t0) / n_evals
        rows.append(ThroughputRow(p, 3600.0 / dt, dt, est.energy, max(len(b) for b in pool.blocks)))
    return rows
