"""
VQE on H2
=========

Exact-mode VQE minimises the statevector energy; sampled mode estimates it
from finite shots per measurement group. Both start from the Hartree-Fock
state with all UCCSD amplitudes at zero.
"""
from vqemu import fixtures
from vqemu.vqe import MolecularProblem, OptimizerSpec

prob = MolecularProblem(fixtures.load("h2"))
print(f"HF {prob.hf_energy:.10f}  exact {prob.exact_energy:.10f}")

# %% Exact mode
res = prob.minimize()
print(f"exact mode: E = {res.energy:.10f} after {res.eval_count} evaluations, "
      f"error {res.energy - prob.exact_energy:.2e} Ha")

# %% Sampled mode with SPSA, which tolerates noisy energies
# The lowest noisy estimate is biased downwards, so re-evaluate its parameters exactly.
res = prob.minimize(OptimizerSpec("spsa", max_evals=600, seed=1), mode="sampled", shots=20_000)
print(f"sampled mode: best estimate {res.energy:.6f}, exact energy at those parameters "
      f"{prob.energy(res.params):.6f} ({res.eval_count} evaluations)")
