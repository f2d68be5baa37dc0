"""Classical optimizers for the VQE loop.

Nelder-Mead and BFGS come from :func:`scipy.optimize.minimize`; the BFGS
variant is fed central-difference gradients so every energy evaluation is
counted. SPSA is implemented here. All three share the same stopping rule:
the absolute energy change between accepted steps stays below ``tolerance``
for ``window`` consecutive steps, or ``max_evals`` is reached.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import minimize as scipy_minimize

KINDS = ("nelder_mead", "bfgs_numeric_gradient", "spsa")


class OptimizerDivergence(RuntimeError):
    """The objective returned a non-finite energy."""


class _Budget(Exception):
    pass


@dataclass(frozen=True)
class OptimizerSpec:
    kind: str = "bfgs_numeric_gradient"
    max_evals: int = 20000
    tolerance: float = 1e-8
    seed: int = 0
    window: int = 3
    gradient_step: float = 1e-5
    simplex_step: float = 0.05
    spsa_step: float = 0.1
    spsa_perturbation: float = 0.05

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown optimizer {self.kind!r}; expected one of {KINDS}")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.max_evals < 1:
            raise ValueError("max_evals must be at least 1")

    @property
    def note(self) -> str:
        if self.kind == "bfgs_numeric_gradient":
            return "quasi-Newton (BFGS) with central-difference gradients, used in place of SLSQP"
        return self.kind


@dataclass
class Tracker:
    """Counts evaluations, records the trace and remembers the best point."""

    fun: Callable[[np.ndarray], float]
    max_evals: int
    trace: list[tuple[int, float]] = field(default_factory=list)
    best_x: np.ndarray | None = None
    best_f: float = np.inf

    def __call__(self, x) -> float:
        if len(self.trace) >= self.max_evals:
            raise _Budget
        x = np.array(x, dtype=float)
        f = float(self.fun(x))
        if not np.isfinite(f):
            raise OptimizerDivergence(f"non-finite energy {f} at evaluation {len(self.trace)}")
        self.trace.append((len(self.trace), f))
        if f < self.best_f:
            self.best_f, self.best_x = f, x
        return f

    @property
    def n_evals(self) -> int:
        return len(self.trace)


class _Window:
    def __init__(self, tol: float, size: int):
        self.tol, self.size = tol, size
        self.accepted: list[float] = []

    def push(self, f: float) -> bool:
        self.accepted.append(f)
        tail = self.accepted[-(self.size + 1) :]
        return len(tail) == self.size + 1 and all(abs(a - b) < self.tol for a, b in zip(tail, tail[1:]))


def central_gradient(f: Callable[[np.ndarray], float], x: np.ndarray, step: float) -> np.ndarray:
    g = np.empty_like(x)
    for k in range(x.size):
        e = np.zeros_like(x)
        e[k] = step
        g[k] = (f(x + e) - f(x - e)) / (2 * step)
    return g


@dataclass
class OptimizeOutcome:
    x: np.ndarray
    fun: float
    n_evals: int
    converged: bool
    message: str
    trace: list[tuple[int, float]]
    wall_time: float


def _finish(tracker: Tracker, converged: bool, message: str, t0: float) -> OptimizeOutcome:
    return OptimizeOutcome(tracker.best_x, tracker.best_f, tracker.n_evals, converged, message,
                           tracker.trace, time.perf_counter() - t0)


def run_optimizer(fun: Callable[[np.ndarray], float], x0, spec: OptimizerSpec) -> OptimizeOutcome:
    """Minimize ``fun`` from ``x0`` under ``spec``; returns the best evaluated point."""
    t0 = time.perf_counter()
    x0 = np.asarray(x0, dtype=float)
    tracker = Tracker(fun, spec.max_evals)
    if x0.size == 0:
        tracker(x0)
        return _finish(tracker, True, "no parameters", t0)
    window = _Window(spec.tolerance, spec.window)
    try:
        if spec.kind == "spsa":
            converged = _spsa(tracker, x0, spec, window)
            return _finish(tracker, converged, "energy change below tolerance" if converged else "iteration limit", t0)
        return _scipy(tracker, x0, spec, window, t0)
    except _Budget:
        return _finish(tracker, False, "max_evals reached", t0)


def _scipy(tracker, x0, spec, window, t0):
    state = {"converged": False}

    def callback(intermediate_result):
        f = float(intermediate_result.fun)
        # a Nelder-Mead iteration that leaves the best vertex in place is not an accepted step
        if spec.kind == "nelder_mead" and window.accepted and f >= window.accepted[-1]:
            return
        if window.push(f):
            state["converged"] = True
            raise StopIteration

    if spec.kind == "nelder_mead":
        simplex = np.vstack([x0] + [x0 + spec.simplex_step * e for e in np.eye(x0.size)])
        res = scipy_minimize(
            tracker, x0, method="Nelder-Mead", callback=callback,
            options={"initial_simplex": simplex, "adaptive": True, "xatol": 1e-10, "fatol": 1e-12,
                     "maxfev": spec.max_evals + 1, "maxiter": 10**9},
        )
    else:
        res = scipy_minimize(
            tracker, x0, method="BFGS", callback=callback,
            jac=lambda x: central_gradient(tracker, x, spec.gradient_step),
            options={"gtol": 1e-9, "maxiter": 10**9},
        )
    converged = state["converged"] or bool(res.success)
    message = "energy change below tolerance" if state["converged"] else str(res.message)
    return _finish(tracker, converged, message, t0)


def _spsa(tracker, x0, spec, window) -> bool:
    """First-order SPSA with standard gain exponents and a calibrated step size.

    Each iteration spends two evaluations on the perturbed pair and one on the
    new iterate; the stopping window watches the iterate energies.
    """
    rng = np.random.default_rng(spec.seed)
    alpha, gamma = 0.602, 0.101
    n_iter = max(1, spec.max_evals // 3)
    big_a = 0.1 * min(n_iter, 1000)
    c = spec.spsa_perturbation
    # calibrate the step so the first update moves about spsa_step
    mags = []
    for _ in range(5):
        delta = rng.choice([-1.0, 1.0], size=x0.size)
        mags.append(abs(tracker(x0 + c * delta) - tracker(x0 - c * delta)) / (2 * c))
    a = spec.spsa_step * (big_a + 1) ** alpha / max(np.mean(mags), 1e-12)
    x = x0.copy()
    for k in range(n_iter):
        ak = a / (k + 1 + big_a) ** alpha
        ck = c / (k + 1) ** gamma
        delta = rng.choice([-1.0, 1.0], size=x.size)
        fp, fm = tracker(x + ck * delta), tracker(x - ck * delta)
        x = x - ak * (fp - fm) / (2 * ck) * delta
        if window.push(tracker(x)):
            return True
    return False
