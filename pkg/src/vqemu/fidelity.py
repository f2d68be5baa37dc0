"""Digital error model: fidelity of a compiled circuit from gate and qubit counts.

    F = (1 - e_g1)**G1 * (1 - e_g2)**G2 * (1 - e_q)**Q

Every gate of a kind carries the same error probability; SPAM error is
charged once per qubit.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

import numpy as np

from .sim.transpile import GateCounts


@dataclass(frozen=True)
class ErrorRates:
    e_g1: float
    e_g2: float
    e_q: float

    def __post_init__(self):
        for name, v in asdict(self).items():
            if not 0.0 <= v < 1.0:
                raise ValueError(f"{name} must lie in [0, 1), got {v}")


def fidelity(counts: GateCounts, rates: ErrorRates) -> float:
    """Closed-form fidelity, accumulated in log space so large counts do not underflow."""
    log_f = (
        counts.g1 * np.log1p(-rates.e_g1)
        + counts.g2 * np.log1p(-rates.e_g2)
        + counts.q * np.log1p(-rates.e_q)
    )
    return float(np.exp(log_f))


def fidelity_direct(counts: GateCounts, rates: ErrorRates) -> float:
    """Plain product form, kept as a cross-check for :func:`fidelity`.

    Rounding ``1 - e`` before exponentiation costs up to about ``G * eps``
    relative accuracy, so for very large counts :func:`fidelity` is the
    more accurate of the two.
    """
    return (1 - rates.e_g1) ** counts.g1 * (1 - rates.e_g2) ** counts.g2 * (1 - rates.e_q) ** counts.q


@dataclass(frozen=True)
class SweepRow:
    e_g1: float
    e_g2: float
    e_q: float
    fidelity: float


def sweep(counts: GateCounts, e_g1: Iterable[float], e_g2: Iterable[float], e_q: Iterable[float]) -> list[SweepRow]:
    """Fidelity on the Cartesian grid of error rates (row-major: e_g1, e_g2, e_q)."""
    rows = []
    for a, b, c in itertools.product(list(e_g1), list(e_g2), list(e_q)):
        rows.append(SweepRow(a, b, c, fidelity(counts, ErrorRates(a, b, c))))
    return rows


def sweep_to_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["e_g1", "e_g2", "e_q", "fidelity"])
    for r in rows:
        w.writerow([repr(r.e_g1), repr(r.e_g2), repr(r.e_q), repr(r.fidelity)])
    return buf.getvalue()


def sweep_to_json(rows: Sequence[SweepRow], counts: GateCounts | None = None) -> str:
    doc = {"rows": [asdict(r) for r in rows]}
    if counts is not None:
        doc["counts"] = asdict(counts)
    return json.dumps(doc, indent=2) + "\n"
