import numpy as np
import pytest

from oracles import fock_matrix, occupation_sector
from vqemu import fixtures
from vqemu.chem import (
    ActiveSpaceSpec,
    FCIDUMPError,
    FermionOperatorSum,
    apply_active_space,
    build_hamiltonian,
    build_ucc_generators,
    from_spatial,
    number_operator,
    parse_fcidump,
    read_manifest,
    spin_z_operator,
    write_fcidump,
)

# FCI energies of the bundled fixtures, computed once with PySCF and frozen here
H2_FCI = -1.137270174660903
H4_FCI = -1.870899211944312
LIH_FCI = -7.882403410335505
LIH_FROZEN_CORE_FCI = -7.882175990800406
# LiH with Li 1s frozen and the two highest virtuals removed (occupation-basis oracle)
LIH_CAS_4x4 = -7.8630808402262335

H2_TEXT = """&FCI NORB=2,NELEC=2,MS2=0,
 ORBSYM=1,1,
 ISYM=1,
&END
 0.6757101548035165 1 1 1 1
 0.1809270275877126 2 1 2 1
 0.6645817302552972 2 2 1 1
 0.6985609377674765 2 2 2 2
-1.2563390730032498 1 1 0 0
-0.4718960072811421 2 2 0 0
 0.7137539936876182 0 0 0 0
"""


def fci(ints):
    m = fock_matrix(build_hamiltonian(ints))
    idx = occupation_sector(ints.n_spatial, ints.n_electrons, ints.spin_z2)
    return np.linalg.eigvalsh(m[np.ix_(idx, idx)])[0]


def test_parse_literal_h2():
    ints = parse_fcidump(H2_TEXT)
    assert (ints.n_spatial, ints.n_electrons, ints.spin_z2) == (2, 2, 0)
    assert ints.core_energy == 0.7137539936876182
    h, eri = ints.spatial()
    assert eri[0, 1, 0, 1] == eri[1, 0, 1, 0] == eri[0, 1, 1, 0] == 0.1809270275877126
    assert eri[0, 0, 1, 1] == eri[1, 1, 0, 0] == 0.6645817302552972
    # two closed-shell determinants coupled by the exchange integral
    core = ints.core_energy
    h11 = 2 * h[0, 0] + eri[0, 0, 0, 0] + core
    h22 = 2 * h[1, 1] + eri[1, 1, 1, 1] + core
    expected = np.linalg.eigvalsh([[h11, eri[0, 1, 0, 1]], [eri[0, 1, 0, 1], h22]])[0]
    assert expected == pytest.approx(-1.1435202706749044, abs=1e-12)
    assert fci(ints) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("name,expected", [("h2", H2_FCI), ("h4", H4_FCI)])
def test_fixture_fci_matches_frozen(name, expected):
    assert fci(fixtures.load(name)) == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize("name", ["h2", "lih", "h2o", "hcluster5"])
def test_reference_energy_is_hf(name):
    assert fixtures.load(name).reference_energy() == pytest.approx(fixtures.metadata(name)["e_hf"], abs=1e-9)


@pytest.mark.parametrize("name", ["h2", "lih", "hcluster3"])
def test_write_round_trip_bit_identical(name):
    ints = fixtures.load(name)
    again = parse_fcidump(write_fcidump(ints))
    assert again.same_values(ints)


def test_header_whitespace_variants():
    text = H2_TEXT.replace("&FCI NORB=2,NELEC=2,MS2=0,", "&FCI\n  NORB = 2 ,\n  NELEC= 2, MS2 =0,").replace("&END", "/")
    assert parse_fcidump(text).same_values(parse_fcidump(H2_TEXT))


@pytest.mark.parametrize(
    "mutate,line",
    [
        (lambda t: t.replace(" 0.6985609377674765 2 2 2 2", " 0.69856 2 2 2 x"), 8),
        (lambda t: t.replace(" 0.6985609377674765 2 2 2 2", " 0.6985609377674765 3 2 2 2"), 8),
        (lambda t: t + " 0.7 2 2 1 1\n", 12),
    ],
    ids=["garbage", "index-out-of-range", "conflicting-duplicate"],
)
def test_malformed_names_line(mutate, line):
    with pytest.raises(FCIDUMPError, match=f"line {line}"):
        parse_fcidump(mutate(H2_TEXT))


def test_missing_header():
    with pytest.raises(FCIDUMPError):
        parse_fcidump(" 0.5 1 1 0 0\n")


def test_consistent_duplicate_accepted():
    assert parse_fcidump(H2_TEXT + " 0.6645817302552972 1 1 2 2\n").same_values(parse_fcidump(H2_TEXT))


def test_manifest(tmp_path):
    rows = read_manifest(fixtures.manifest("h2"))
    assert len(rows) == 8 and rows[0][0] == pytest.approx(0.3)
    assert all(p.exists() for _, p in rows)
    bad = tmp_path / "m.txt"
    bad.write_text("1.0 a.fcidump\nfoo\n")
    with pytest.raises(ValueError, match=":2"):
        read_manifest(bad)


def test_empty_active_space_is_identity():
    ints = fixtures.load("lih")
    assert apply_active_space(ints, ActiveSpaceSpec()) is ints


def test_frozen_core_preserves_hf_energy():
    ints = fixtures.load("lih")
    red = apply_active_space(ints, ActiveSpaceSpec((0,)))
    assert red.n_spatial == 5 and red.n_electrons == 2
    assert red.reference_energy() == pytest.approx(ints.reference_energy(), abs=1e-10)


def test_freezing_everything_gives_hf_core():
    ints = fixtures.load("h2")
    red = apply_active_space(ints, ActiveSpaceSpec((0,), (1,)))
    assert red.n_spatial == 0
    assert red.core_energy == pytest.approx(ints.reference_energy(), abs=1e-12)


def test_active_space_ground_energy():
    red = apply_active_space(fixtures.load("lih"), ActiveSpaceSpec((0,), (4, 5)))
    assert fci(red) == pytest.approx(LIH_CAS_4x4, abs=1e-9)
    assert LIH_CAS_4x4 > LIH_FROZEN_CORE_FCI > LIH_FCI


@pytest.mark.parametrize("spec", [ActiveSpaceSpec((2,)), ActiveSpaceSpec((), (0,)), ActiveSpaceSpec((0,), (0,)),
                                  ActiveSpaceSpec((9,))])
def test_active_space_rejects(spec):
    with pytest.raises(ValueError):
        apply_active_space(fixtures.load("lih"), spec)


def test_hamiltonian_is_hermitian_and_conserves():
    ints = fixtures.load("h3p")
    h = fock_matrix(build_hamiltonian(ints))
    n = fock_matrix(number_operator(ints.n_spin_orbitals))
    sz = fock_matrix(spin_z_operator(ints.n_spatial))
    np.testing.assert_allclose(h, h.conj().T, atol=1e-14)
    np.testing.assert_allclose(h @ n, n @ h, atol=1e-12)
    np.testing.assert_allclose(h @ sz, sz @ h, atol=1e-12)


def test_normal_ordering_anticommutator():
    # a_0 a_0^+ = 1 - a_0^+ a_0
    op = FermionOperatorSum(2)
    op.add([(0, False), (0, True)], 1.0)
    assert op.constant == 1.0 and op.terms == {((0, True), (0, False)): -1.0}
    # a_1^+ a_0^+ = -a_0^+ a_1^+
    op = FermionOperatorSum(2)
    op.add([(1, True), (0, True)], 1.0)
    assert op.terms == {((0, True), (1, True)): -1.0}


def test_from_spatial_matches_fixture():
    ints = fixtures.load("h2")
    h, eri = ints.spatial()
    again = from_spatial(h, eri, 2, 0, ints.core_energy)
    np.testing.assert_array_equal(again.two_body, ints.two_body)


def test_generator_counts():
    h2 = fixtures.load("h2")
    assert len(build_ucc_generators(h2, "UCCS")) == 2
    assert len(build_ucc_generators(h2, "UCCSD")) == 3
    lih = apply_active_space(fixtures.load("lih"), ActiveSpaceSpec((0,)))
    gens = build_ucc_generators(lih, "UCCSD")
    assert len(gens) == 24
    assert [g.slot for g in gens] == list(range(24))
    assert [g.rank for g in gens] == [1] * 8 + [2] * 16


def test_generators_are_anti_hermitian_and_spin_preserving():
    ints = fixtures.load("h4")
    sz = fock_matrix(spin_z_operator(ints.n_spatial))
    for g in build_ucc_generators(ints):
        m = fock_matrix(g.generator)
        np.testing.assert_allclose(m, -m.conj().T, atol=1e-14)
        np.testing.assert_allclose(m @ sz, sz @ m, atol=1e-14)


def test_generators_reject_open_shell():
    ints = fixtures.load("h2")
    h, eri = ints.spatial()
    with pytest.raises(ValueError):
        build_ucc_generators(from_spatial(h, eri, 1, 1), "UCCSD")


def test_no_generators_warns(caplog):
    red = apply_active_space(fixtures.load("h2"), ActiveSpaceSpec((0,)))
    assert build_ucc_generators(red) == []
    assert "no UCCSD generators" in caplog.text
