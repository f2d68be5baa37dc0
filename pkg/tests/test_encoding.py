import numpy as np
import pytest

from oracles import fock_matrix, occupation_sector
from vqemu import fixtures
from vqemu.chem import ActiveSpaceSpec, apply_active_space, build_hamiltonian, number_operator
from vqemu.encoding import (
    EncodingScheme,
    bits_to_index,
    encode,
    encode_reference_state,
    encoding_matrix,
    gf2_inverse,
    tapered_qubits,
)
from vqemu.pauli import to_dense_matrix
from vqemu.sim.exact import exact_ground_energy

KINDS = ["jordan_wigner", "parity", "bravyi_kitaev"]


def permutation(kind, n):
    a = encoding_matrix(kind, n)
    p = np.zeros((2**n, 2**n))
    for s in range(2**n):
        occ = np.array([(s >> k) & 1 for k in range(n)])
        p[bits_to_index(a @ occ % 2), s] = 1
    return p


def test_scheme_parse():
    assert EncodingScheme.parse("JW") == EncodingScheme("jordan_wigner")
    assert EncodingScheme.parse("parity+taper") == EncodingScheme("parity", True)
    assert EncodingScheme.parse("bk").label == "bravyi_kitaev"
    with pytest.raises(ValueError):
        EncodingScheme.parse("ternary")
    with pytest.raises(ValueError):
        EncodingScheme.parse("jw+taper")


def test_bravyi_kitaev_matrix():
    expected = np.array([
        [1, 0, 0, 0, 0, 0, 0, 0],
        [1, 1, 0, 0, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 0, 0],
        [1, 1, 1, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, 0, 1, 1, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, 0],
        [1, 1, 1, 1, 1, 1, 1, 1],
    ])
    np.testing.assert_array_equal(encoding_matrix("bravyi_kitaev", 8), expected)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", [1, 2, 5, 8, 13])
def test_gf2_inverse(kind, n):
    a = encoding_matrix(kind, n)
    np.testing.assert_array_equal(a @ gf2_inverse(a) % 2, np.eye(n, dtype=a.dtype))


@pytest.mark.parametrize("kind", KINDS)
def test_number_operator_is_z_only(kind):
    for p in range(6):
        h = encode(number_operator(6, [p]), EncodingScheme(kind))
        assert all(set(k) <= {"I", "Z"} for k in h.terms)
        assert h.constant() == pytest.approx(0.5)
        assert len(h) == 2


def test_jordan_wigner_hopping():
    from vqemu.chem import FermionOperatorSum

    op = FermionOperatorSum(2)
    op.add([(0, True), (1, False)], 1.0)
    op.add([(1, True), (0, False)], 1.0)
    assert encode(op, EncodingScheme("jordan_wigner")).terms == pytest.approx({"XX": 0.5, "YY": 0.5})


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("name", ["h2", "h3p"])
def test_encoded_matrix_equals_occupation_oracle(kind, name):
    ints = fixtures.load(name)
    op = build_hamiltonian(ints)
    n = ints.n_spin_orbitals
    p = permutation(kind, n)
    np.testing.assert_allclose(to_dense_matrix(encode(op, EncodingScheme(kind))), p @ fock_matrix(op) @ p.T,
                               atol=1e-12)


@pytest.mark.parametrize("name", ["h2", "h3p", "h4"])
def test_tapered_ground_is_sector_ground(name):
    ints = fixtures.load(name)
    m = fock_matrix(build_hamiltonian(ints))
    idx = occupation_sector(ints.n_spatial, ints.n_electrons, ints.spin_z2)
    exact = np.linalg.eigvalsh(m[np.ix_(idx, idx)])[0]
    h = encode(build_hamiltonian(ints), EncodingScheme("parity", True), ints.n_spin_orbitals, ints.n_electrons)
    assert h.n_qubits == ints.n_spin_orbitals - 2
    # tapering only fixes parities, so particle-number sectors of equal parity survive
    sector_min = np.linalg.eigvalsh(to_dense_matrix(h))[0]
    assert sector_min <= exact + 1e-10


def test_h2_tapered_hamiltonian():
    ints = fixtures.load("h2")
    h = encode(build_hamiltonian(ints), EncodingScheme("parity", True), 4, 2)
    assert h.n_qubits == 2 and len(h) == 5
    assert exact_ground_energy(h) == pytest.approx(-1.137270174660903, abs=1e-10)


def test_tapered_qubits():
    assert tapered_qubits(12) == [5, 11]
    with pytest.raises(ValueError):
        tapered_qubits(7)


def test_tapering_needs_electron_count():
    with pytest.raises(ValueError):
        encode(build_hamiltonian(fixtures.load("h2")), EncodingScheme("parity", True))


@pytest.mark.parametrize("scheme", ["jw", "parity", "bk", "parity+taper"])
@pytest.mark.parametrize("name", ["h2", "h4", "lih"])
def test_reference_state_energy_is_hf(scheme, name):
    ints = fixtures.load(name)
    if name == "lih":
        ints = apply_active_space(ints, ActiveSpaceSpec((0,)))
    s = EncodingScheme.parse(scheme)
    h = encode(build_hamiltonian(ints), s, ints.n_spin_orbitals, ints.n_electrons)
    k = bits_to_index(encode_reference_state(ints.n_spin_orbitals, ints.n_electrons, s))
    assert h.sparse_matrix()[k, k].real == pytest.approx(ints.reference_energy(), abs=1e-10)


def test_reference_state_bits():
    assert list(encode_reference_state(4, 2, EncodingScheme("jordan_wigner"))) == [1, 0, 1, 0]
    assert list(encode_reference_state(4, 2, EncodingScheme("parity"))) == [1, 1, 0, 0]
    assert list(encode_reference_state(4, 2, EncodingScheme("parity", True))) == [1, 0]
    with pytest.raises(ValueError):
        encode_reference_state(4, 5, EncodingScheme("parity"))
