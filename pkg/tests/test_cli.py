import json
import subprocess
import sys

import numpy as np
import pytest

from vqemu import fixtures
from vqemu.cli import main
from vqemu.pauli import WeightedPauliSum


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_encode_h2_taper_vs_jw(capsys, tmp_path):
    code, out, err = run_cli(capsys, "encode", "h2", "--scheme", "parity+taper")
    assert code == 0
    assert "n_qubits=2 n_terms=5" in err
    h = WeightedPauliSum.from_text(out)
    assert h.n_qubits == 2 and len(h) == 5
    code, out, err = run_cli(capsys, "encode", "h2", "--scheme", "jw", "--format", "json")
    doc = json.loads(out)
    assert doc["n_qubits"] == 4 and len(doc["terms"]) == 15


def test_encode_active_space_flags(capsys):
    code, out, err = run_cli(capsys, "encode", "lih", "--freeze", "0", "--remove", "4,5")
    assert code == 0 and "n_spin_orbitals=6 n_qubits=4" in err


def test_encode_invalid_fcidump_names_line(capsys, tmp_path):
    bad = tmp_path / "bad.fcidump"
    bad.write_text("&FCI NORB=2,NELEC=2,\n&END\n 0.5 1 1 1 1\n abc 1 1 0 0\n")
    code, out, err = run_cli(capsys, "encode", str(bad))
    assert code == 2
    assert "line 4" in err and out == ""
    assert len(err.strip().splitlines()) == 1


def test_encode_missing_file(capsys):
    code, _, err = run_cli(capsys, "encode", "no_such_file.fcidump")
    assert code == 2 and "no such" in err


def test_encode_scaling_report(capsys):
    code, out, err = run_cli(capsys, "encode", "--scaling", "--scheme", "jw")
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    n = np.array([int(r[1]) for r in rows])
    t = np.array([int(r[2]) for r in rows])
    assert list(n) == [4, 6, 8, 10, 12, 14, 16]
    assert 3.4 <= np.polyfit(np.log(n), np.log(t), 1)[0] <= 4.6
    assert "slope" in err


def test_plan_report(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "plan", "lih", "--scheme", "jw")
    doc = json.loads(out)
    assert doc["naive_count"] == 630
    assert doc["reduction_factor"] == pytest.approx(630 / doc["greedy_groups"])
    ham = tmp_path / "h2.txt"
    run_cli(capsys, "encode", "h2", "-o", str(ham))
    code, out, _ = run_cli(capsys, "plan", str(ham), "--exact")
    doc = json.loads(out)
    assert doc["optimal_groups"] <= doc["greedy_groups"] <= doc["optimal_groups"] + 1


def test_plan_single_group(capsys, tmp_path):
    ham = tmp_path / "zz.txt"
    ham.write_text("1.0 ZZI\n0.5 ZII\n0.2 IZZ\n")
    code, out, _ = run_cli(capsys, "plan", str(ham))
    doc = json.loads(out)
    assert doc["greedy_groups"] == 1 and doc["reduction_factor"] == 3


def test_plan_exact_too_large(capsys):
    code, _, err = run_cli(capsys, "plan", "lih", "--exact")
    assert code == 2 and "at most 20" in err


def test_scan_h2(capsys, tmp_path):
    cfg = tmp_path / "scan.yaml"
    cfg.write_text(
        f"manifest: {fixtures.manifest('h2')}\nscheme: parity+taper\nansatz: {{level: UCCSD}}\n"
        "output: {csv: out.csv, json: out.json}\n"
    )
    code, out, err = run_cli(capsys, "scan", str(cfg))
    assert code == 0
    lines = (tmp_path / "out.csv").read_text().splitlines()
    assert lines[0] == "bond_length_angstrom,e_vqe_hartree,e_exact_hartree,e_hf_hartree,n_evals,wall_seconds"
    assert len(lines) == 9
    for line in lines[1:]:
        r, e_vqe, e_exact, e_hf = map(float, line.split(",")[:4])
        assert abs(e_vqe - e_exact) <= 1.6e-3 and e_hf >= e_vqe - 1e-9
    doc = json.loads((tmp_path / "out.json").read_text())
    assert doc["meta"]["warm_start"] is True and len(doc["rows"]) == 8


def test_scan_flag_overrides(capsys, tmp_path):
    manifest = tmp_path / "one.manifest"
    manifest.write_text(f"0.7414 {fixtures.path('h2')}\n")
    code, out, _ = run_cli(capsys, "scan", "--manifest", str(manifest), "--level", "UCCS", "--no-warm-start",
                           "--json", str(tmp_path / "o.json"))
    assert code == 0 and len(out.strip().splitlines()) == 2
    meta = json.loads((tmp_path / "o.json").read_text())["meta"]
    assert meta["ansatz"] == "UCCS" and meta["warm_start"] is False


def test_scan_bad_config(capsys, tmp_path):
    cfg = tmp_path / "bad.yaml"
    cfg.write_text("manifest: h2\nshots: [1, 2\n")
    code, _, err = run_cli(capsys, "scan", str(cfg))
    assert code == 2 and "line" in err
    cfg.write_text("manifest: h2\ncolour: blue\n")
    code, _, err = run_cli(capsys, "scan", str(cfg))
    assert code == 2 and "colour" in err
    code, _, err = run_cli(capsys, "scan")
    assert code == 2 and "manifest" in err


def test_scan_inconsistent_manifest(capsys, tmp_path):
    manifest = tmp_path / "mixed.manifest"
    manifest.write_text(f"0.74 {fixtures.path('h2')}\n1.6 {fixtures.path('lih')}\n")
    code, _, err = run_cli(capsys, "scan", "--manifest", str(manifest))
    assert code == 2 and "disagree" in err


def test_fidelity_zero_rates(capsys):
    code, out, err = run_cli(capsys, "fidelity", "--e-g1", "0", "--e-g2", "0", "--e-q", "0")
    assert code == 0
    assert [line.split(",")[-1] for line in out.strip().splitlines()[1:]] == ["1.0"]
    assert "G1=8 G2=4 Q=2" in err


def test_fidelity_grid(capsys, tmp_path):
    cfg = tmp_path / "f.json"
    cfg.write_text(json.dumps({"fcidump": "h2", "rates": {"e_g1": [0, 1e-3], "e_g2": [1e-2], "e_q": [0, 1e-2]}}))
    code, out, _ = run_cli(capsys, "fidelity", str(cfg))
    rows = out.strip().splitlines()[1:]
    assert len(rows) == 4
    f = {tuple(map(float, r.split(",")[:3])): float(r.split(",")[3]) for r in rows}
    assert 0.93 <= f[(1e-3, 1e-2, 1e-2)] <= 0.97


def test_bench(capsys):
    code, out, err = run_cli(capsys, "bench", "--fcidump", "h2", "--worker-counts", "1,2", "--shots", "100",
                             "--n-evals", "1")
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    assert [r[0] for r in rows] == ["1", "2"]
    assert rows[0][3] == rows[1][3]
    assert "identical across worker counts: True" in err


def test_numeric_failure_exit_code(capsys, monkeypatch):
    from vqemu.vqe import scan
    from vqemu.vqe.optimizers import OptimizerDivergence

    def boom(*a, **k):
        raise OptimizerDivergence("non-finite energy nan at evaluation 3")

    monkeypatch.setattr("vqemu.cli.scan_dissociation", boom)
    code, _, err = run_cli(capsys, "scan", "--manifest", "h2")
    assert code == 3 and "numeric failure" in err


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "vqemu.cli", "encode", "h2"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.endswith("\n")
