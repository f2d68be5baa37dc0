"""
Pauli strings and weighted sums
===============================

Pauli strings are stored as a pair of bitmasks (x, z) plus a phase, with
qubit 0 as the least significant bit. Multiplication, commutation checks and
sums all work on the masks; dense matrices are only built on request.
"""
import numpy as np

from vqemu.pauli import PauliString, general_commutes, pauli_sum, qubitwise_commutes, to_dense_matrix

# %% Products keep track of the phase
x = PauliString.from_letters("XI")
z = PauliString.from_letters("ZZ")
print("XI * ZZ =", x * z)
print("ZZ * XI =", z * x)

# %% Two flavours of commutation
a, b = PauliString.from_letters("XX"), PauliString.from_letters("YY")
print("XX, YY commute:", general_commutes(a, b), "| qubit-wise:", qubitwise_commutes(a, b))

# %% Weighted sums merge equal strings and drop tiny coefficients
h = pauli_sum([(0.5, "ZZ"), (0.5, "ZZ"), (0.25, "XX"), (1e-16, "YY"), (-1.0, "II")])
print(h.to_text())
m = to_dense_matrix(h)
print("eigenvalues:", np.round(np.linalg.eigvalsh(m), 6))
