"""
Optimizer comparison on LiH
===========================

Counts energy evaluations until the best energy so far is within 10 meV of
the exact ground state. Timings depend on the machine and are shown only for
orientation.
"""
import time

from vqemu import fixtures
from vqemu.chem import ActiveSpaceSpec
from vqemu.vqe import MolecularProblem, OptimizerSpec

prob = MolecularProblem(fixtures.load("lih"), active_space=ActiveSpaceSpec((0,)))
target = prob.exact_energy + 0.010 / 27.211386245988

for kind in ("bfgs_numeric_gradient", "nelder_mead", "spsa"):
    t = time.perf_counter()
    res = prob.minimize(OptimizerSpec(kind))
    hit = res.evals_to_reach(target)
    print(f"{kind:22s} to 10 meV: {hit if hit is not None else 'never':>6}  total {res.eval_count:6d} evals  "
          f"final error {res.energy - prob.exact_energy:.2e} Ha  {time.perf_counter() - t:.1f} s")
