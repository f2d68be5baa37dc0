"""Reference implementations used only by the tests.

They are deliberately naive: dense Kronecker products for Pauli strings and a
direct occupation-number construction for fermionic operators, sharing no
code with the encoders.
"""

import numpy as np

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def dense_pauli(letters):
    """Qubit 0 is the least significant bit, so it is the rightmost factor."""
    m = np.eye(1, dtype=complex)
    for ch in letters:
        m = np.kron(PAULI[ch], m)
    return m


def dense_sum(terms):
    """``terms``: iterable of (letters, coeff)."""
    terms = list(terms)
    n = len(terms[0][0])
    out = np.zeros((2**n, 2**n), dtype=complex)
    for letters, c in terms:
        out += c * dense_pauli(letters)
    return out


def apply_ladder(ops, state):
    """Apply a product of ladder operators (rightmost first) to an occupation bitmask.

    Returns (sign, new_state) or None if the result vanishes.
    """
    sign = 1
    for p, dagger in reversed(ops):
        occupied = (state >> p) & 1
        if occupied == dagger:
            return None
        if bin(state & ((1 << p) - 1)).count("1") % 2:
            sign = -sign
        state ^= 1 << p
    return sign, state


def fock_matrix(fop):
    """Matrix of a FermionOperatorSum on all 2**n occupation states (index = sum n_p 2**p)."""
    n = fop.n_spin_orbitals
    dim = 2**n
    m = np.zeros((dim, dim), dtype=complex)
    m += fop.constant * np.eye(dim)
    for ops, c in fop.terms.items():
        for s in range(dim):
            hit = apply_ladder(ops, s)
            if hit is not None:
                sign, t = hit
                m[t, s] += sign * c
    return m


def occupation_sector(n_spatial, n_electrons, spin_z2=0):
    n = 2 * n_spatial
    out = []
    for s in range(2**n):
        na = bin(s & ((1 << n_spatial) - 1)).count("1")
        nb = bin(s >> n_spatial).count("1")
        if na + nb == n_electrons and na - nb == spin_z2:
            out.append(s)
    return np.array(out)


def min_qwc_partition(letter_strings, prime=2_147_483_629):
    """Smallest partition into qubit-wise commuting sets.

    Counts ordered k-tuples of commuting sets that cover every term by
    inclusion-exclusion over subsets (mod a large prime) and returns the
    smallest k with a nonzero count. Exact and independent of any search order;
    O(2^m m) for m terms.
    """
    m = len(letter_strings)
    if m == 0:
        return 0

    def compatible(a, b):
        return all(x == y or x == "I" or y == "I" for x, y in zip(a, b))

    conflict = [sum(1 << j for j in range(m) if not compatible(letter_strings[i], letter_strings[j])) for i in range(m)]
    masks = np.arange(1 << m, dtype=np.int64)
    clique = np.zeros(1 << m, dtype=np.int64)
    clique[0] = 1
    for b in range(m):
        lo, hi = 1 << b, 1 << (b + 1)
        rest = masks[lo:hi] ^ lo
        clique[lo:hi] = clique[rest] * ((rest & conflict[b]) == 0)
    count = clique.copy()
    for b in range(m):
        view = count.reshape(-1, 2, 1 << b)
        view[:, 1, :] += view[:, 0, :]
    count %= prime
    sign = np.where((m - np.bitwise_count(masks.astype(np.uint64))) % 2, -1, 1)
    power = np.ones(1 << m, dtype=np.int64)
    for k in range(1, m + 1):
        power = power * count % prime
        if int(np.sum(sign * power % prime)) % prime:
            return k
    return m


def random_hamiltonian(rng, n_qubits, n_terms):
    """Real-coefficient random Pauli sum (a Hermitian operator) with an identity offset."""
    from vqemu.pauli import WeightedPauliSum

    n_terms = min(n_terms, 4**n_qubits - 1)
    terms = {"I" * n_qubits: rng.normal()}
    while len(terms) < n_terms + 1:
        terms["".join(rng.choice(list("IXYZ"), n_qubits))] = rng.normal()
    return WeightedPauliSum.from_dict(terms)


def random_state(rng, n_qubits):
    psi = rng.normal(size=2**n_qubits) + 1j * rng.normal(size=2**n_qubits)
    return psi / np.linalg.norm(psi)


def fidelity_exact(g1, g2, q, e1, e2, eq):
    """Direct substitution into the product formula at 50 significant digits."""
    import mpmath

    with mpmath.workdps(50):
        one = mpmath.mpf(1)
        f = (one - mpmath.mpf(e1)) ** g1 * (one - mpmath.mpf(e2)) ** g2 * (one - mpmath.mpf(eq)) ** q
        return float(f)
