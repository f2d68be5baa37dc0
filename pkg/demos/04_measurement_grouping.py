"""
Measurement grouping
====================

Qubit-wise commuting terms can be read from the same measurement basis. The
greedy plan sorts terms by weight and opens a new basis only when a term fits
none of the existing ones. For small Hamiltonians the optimum is available
by exhaustive search.
"""
from vqemu import fixtures
from vqemu.chem import build_hamiltonian
from vqemu.encoding import EncodingScheme, encode
from vqemu.grouping import exact_plan, greedy_plan

# %% H2: greedy against the optimum
h2 = encode(build_hamiltonian(fixtures.load("h2")), EncodingScheme("jordan_wigner"))
greedy, best = greedy_plan(h2), exact_plan(h2)
print(f"H2 JW: {greedy.n_terms_covered} terms, greedy {greedy.n_groups} groups, optimum {best.n_groups}")
labels = list(h2.terms)
for g in greedy.groups:
    print("  basis", g.basis.letters, "covers", [labels[i] for i in g.members])

# %% LiH: the reduction factor that matters for shot budgets
lih = encode(build_hamiltonian(fixtures.load("lih")), EncodingScheme("jordan_wigner"))
plan = greedy_plan(lih)
print(f"LiH JW: {plan.n_terms_covered} terms -> {plan.n_groups} groups ({plan.reduction_factor:.2f}x fewer)")
