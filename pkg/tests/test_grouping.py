import numpy as np
import pytest

from oracles import dense_pauli, min_qwc_partition, random_hamiltonian, random_state
from vqemu import fixtures
from vqemu.chem import ActiveSpaceSpec, apply_active_space, build_hamiltonian
from vqemu.encoding import EncodingScheme, encode
from vqemu.grouping import covers, exact_plan, greedy_plan, min_clique_cover, rotation_circuit
from vqemu.pauli import PauliString, pauli_sum
from vqemu.sim.sampling import plan_expectation_state
from vqemu.sim.statevector import expectation_state, run


def test_small_example_two_groups():
    h = pauli_sum([(1.0, "ZZ"), (0.5, "ZI"), (0.5, "IZ"), (0.2, "XX")])
    plan = greedy_plan(h)
    plan.validate()
    assert plan.n_groups == 2
    assert [g.basis.letters for g in plan.groups] == ["ZZ", "XX"]
    assert plan.reduction_factor == 2.0


def test_single_group_reduction_factor_is_term_count():
    h = pauli_sum([(1.0, "ZZI"), (0.5, "ZII"), (0.5, "IIZ"), (0.1, "IZZ"), (3.0, "III")])
    plan = greedy_plan(h)
    assert plan.n_groups == 1
    assert plan.reduction_factor == 4
    assert plan.offset == 3.0


def test_identity_only_hamiltonian_has_no_groups():
    plan = greedy_plan(pauli_sum([(2.0, "II")]))
    assert plan.n_groups == 0
    assert plan_expectation_state(np.array([1, 0, 0, 0], dtype=complex), plan) == 2.0


def test_covers():
    b = PauliString.from_letters("XYZ")
    assert covers(b, PauliString.from_letters("XIZ"))
    assert covers(b, PauliString.from_letters("III"))
    assert not covers(b, PauliString.from_letters("ZII"))


@pytest.mark.parametrize("letters", ["XYZI", "YYXX", "ZIZY"])
def test_rotation_diagonalizes_basis(letters):
    b = PauliString.from_letters(letters)
    u = np.eye(16, dtype=complex)
    for k in range(16):
        u[:, k] = run(rotation_circuit(b), (), k)
    rotated = u @ dense_pauli(letters) @ u.conj().T
    np.testing.assert_allclose(rotated, np.diag(np.diag(rotated)), atol=1e-12)
    z_letters = "".join("I" if ch == "I" else "Z" for ch in letters)
    np.testing.assert_allclose(rotated, dense_pauli(z_letters), atol=1e-12)


def test_plan_reconstructs_expectation_random():
    rng = np.random.default_rng(11)
    for _ in range(25):
        n = int(rng.integers(1, 7))
        h = random_hamiltonian(rng, n, int(rng.integers(1, 30)))
        psi = random_state(rng, n)
        plan = greedy_plan(h)
        plan.validate()
        assert plan_expectation_state(psi, plan) == pytest.approx(expectation_state(psi, h), abs=1e-10)


def test_exact_cover_matches_brute_force():
    rng = np.random.default_rng(5)
    for _ in range(30):
        n = int(rng.integers(1, 4))
        h = random_hamiltonian(rng, n, int(rng.integers(1, 8)))
        letters = [k for k in h.terms if set(k) != {"I"}]
        plan = exact_plan(h)
        plan.validate()
        assert plan.n_groups == min_qwc_partition(letters)
        assert greedy_plan(h).n_groups >= plan.n_groups


def test_exact_plan_size_limit():
    h = random_hamiltonian(np.random.default_rng(0), 6, 25)
    with pytest.raises(ValueError):
        exact_plan(h)


def test_min_clique_cover_triangle_free():
    # X, Y, Z on one qubit pairwise conflict: three classes
    paulis = [PauliString.from_letters(s) for s in "XYZ"]
    assert len(min_clique_cover(paulis)) == 3


def test_greedy_is_deterministic():
    h = random_hamiltonian(np.random.default_rng(3), 5, 40)
    a, b = greedy_plan(h), greedy_plan(h)
    assert [g.members for g in a.groups] == [g.members for g in b.groups]


def test_lih_reduction():
    ints = fixtures.load("lih")
    h = encode(build_hamiltonian(ints), EncodingScheme("jordan_wigner")).real()
    plan = greedy_plan(h)
    plan.validate()
    assert plan.n_terms_covered == 630
    assert plan.reduction_factor >= 2


def test_lih_frozen_core_plan_matches_energy():
    ints = apply_active_space(fixtures.load("lih"), ActiveSpaceSpec((0,)))
    h = encode(build_hamiltonian(ints), EncodingScheme("parity", True), 10, 2).real()
    psi = random_state(np.random.default_rng(1), h.n_qubits)
    assert plan_expectation_state(psi, greedy_plan(h)) == pytest.approx(expectation_state(psi, h), abs=1e-10)
