import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import fidelity_exact
from vqemu import fixtures
from vqemu.fidelity import ErrorRates, fidelity, fidelity_direct, sweep, sweep_to_csv, sweep_to_json
from vqemu.sim.transpile import GateCounts, transpile_and_count
from vqemu.vqe import AnsatzSpec, MolecularProblem

RATES = ErrorRates(1e-3, 1e-2, 1e-2)


def test_zero_rates_give_one():
    assert fidelity(GateCounts(100, 50, 4), ErrorRates(0, 0, 0)) == 1.0


def test_direct_substitution_example():
    f = fidelity(GateCounts(10, 5, 2), RATES)
    assert f == pytest.approx(0.999**10 * 0.99**5 * 0.99**2, rel=1e-14)
    assert f == pytest.approx(0.9228, abs=5e-5)


@settings(max_examples=200, deadline=None)
@given(
    st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 10**6),
    st.floats(0, 0.01), st.floats(0, 0.01), st.floats(0, 0.01),
)
def test_log_space_agrees_with_direct_substitution(g1, g2, q, e1, e2, eq):
    c, r = GateCounts(g1, g2, q), ErrorRates(e1, e2, eq)
    exact = fidelity_exact(g1, g2, q, e1, e2, eq)
    if exact > 1e-300:
        assert fidelity(c, r) == pytest.approx(exact, rel=1e-12)
        # the float product rounds 1 - e before exponentiating: error grows like G * eps
        bound = 4e-16 * (g1 + g2 + q + 1)
        assert fidelity_direct(c, r) == pytest.approx(exact, rel=max(bound, 1e-14))


def test_no_underflow_to_zero_in_log_space():
    f = fidelity(GateCounts(10**6, 10**6, 10), ErrorRates(1e-3, 1e-3, 1e-3))
    assert f > 0.0 or np.log1p(-1e-3) * 2_000_010 < -745


def test_doubling_two_qubit_count():
    a = fidelity(GateCounts(7, 9, 3), RATES)
    b = fidelity(GateCounts(7, 18, 3), RATES)
    assert b / a == pytest.approx((1 - RATES.e_g2) ** 9, rel=1e-13)


@pytest.mark.parametrize("bad", [(-0.1, 0, 0), (0, 1.0, 0), (0, 0, 2.0)])
def test_rates_validated(bad):
    with pytest.raises(ValueError):
        ErrorRates(*bad)


def test_counts_validated():
    with pytest.raises(ValueError):
        GateCounts(-1, 0, 0)


def test_sweep_monotone_and_single_point():
    c = GateCounts(20, 8, 4)
    grid = [0.0, 1e-3, 1e-2]
    rows = sweep(c, grid, grid, grid)
    assert len(rows) == 27
    f = np.array([r.fidelity for r in rows]).reshape(3, 3, 3)
    for axis in range(3):
        assert np.all(np.diff(f, axis=axis) < 0)
    one = sweep(c, [1e-3], [1e-2], [1e-2])
    assert len(one) == 1 and one[0].fidelity == fidelity(c, RATES)


def test_sweep_outputs():
    rows = sweep(GateCounts(1, 1, 1), [0.0], [0.0, 0.5], [0.0])
    text = sweep_to_csv(rows)
    assert text.splitlines() == ["e_g1,e_g2,e_q,fidelity", "0.0,0.0,0.0,1.0", "0.0,0.5,0.0,0.5"]
    doc = json.loads(sweep_to_json(rows, GateCounts(1, 1, 1)))
    assert doc["counts"] == {"g1": 1, "g2": 1, "q": 1} and len(doc["rows"]) == 2


def test_h2_uccsd_fidelity_near_095():
    prob = MolecularProblem(fixtures.load("h2"))
    counts = transpile_and_count(prob.ansatz)
    assert counts == GateCounts(8, 4, 2)
    assert 0.93 <= fidelity(counts, RATES) <= 0.97


def test_uccs_beats_uccsd():
    f = {}
    for level in ("UCCS", "UCCSD"):
        prob = MolecularProblem(fixtures.load("h4"), ansatz_spec=AnsatzSpec(level))
        f[level] = fidelity(transpile_and_count(prob.ansatz), RATES)
    assert f["UCCS"] > f["UCCSD"]
