"""Command-line entry point: ``vqemu {encode,plan,scan,fidelity,bench}``.

Data goes to stdout (or the requested output files), diagnostics to stderr.
Exit codes: 0 success, 2 input error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import fixtures
from .chem import ActiveSpaceSpec, FCIDUMPError, apply_active_space, build_hamiltonian, parse_fcidump
from .config import ConfigError, RunConfig, resolve_fcidump
from .encoding import EncodingScheme, encode
from .fidelity import sweep, sweep_to_csv, sweep_to_json
from .grouping import EXACT_MAX_TERMS, exact_plan, greedy_plan
from .pauli import WeightedPauliSum
from .sim.transpile import transpile_and_count
from .vqe.driver import MolecularProblem
from .vqe.optimizers import OptimizerDivergence
from .vqe.parallel import benchmark_throughput
from .vqe.scan import ManifestError, scan_dissociation, scan_to_csv, scan_to_json

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3


class InputError(ValueError):
    pass


def _emit(text: str, path: Path | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text, encoding="utf-8")


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.replace(",", " ").split())


def _float_list(text: str) -> list[float]:
    return [float(t) for t in text.replace(",", " ").split()]


def _load_integrals(ref: str, freeze: tuple[int, ...], remove: tuple[int, ...]):
    ints = parse_fcidump(resolve_fcidump(ref))
    return apply_active_space(ints, ActiveSpaceSpec(freeze, remove))


def _encode_ints(ints, scheme: EncodingScheme) -> WeightedPauliSum:
    return encode(build_hamiltonian(ints), scheme, ints.n_spin_orbitals, ints.n_electrons, ints.spin_z2).real()


# encode

def cmd_encode(args) -> int:
    scheme = EncodingScheme.parse(args.scheme)
    if args.scaling:
        names = fixtures.scaling_family()
        ns, ts = [], []
        lines = ["fixture,n_spin_orbitals,n_terms"]
        for name in names:
            ints = fixtures.load(name)
            h = _encode_ints(ints, scheme)
            ns.append(ints.n_spin_orbitals)
            ts.append(len(h))
            lines.append(f"{name},{ints.n_spin_orbitals},{len(h)}")
        _emit("\n".join(lines), args.output)
        slope = np.polyfit(np.log(ns), np.log(ts), 1)[0]
        print(f"log-log slope of n_terms vs n_spin_orbitals: {slope:.3f}", file=sys.stderr)
        return EXIT_OK
    if args.fcidump is None:
        raise InputError("encode needs an FCIDUMP path or fixture name (or --scaling)")
    ints = _load_integrals(args.fcidump, args.freeze, args.remove)
    h = _encode_ints(ints, scheme)
    report = (f"# scheme={scheme.label} n_spin_orbitals={ints.n_spin_orbitals} "
              f"n_qubits={h.n_qubits} n_terms={len(h)}")
    if args.format == "json":
        body = json.dumps({"scheme": scheme.label, "n_spin_orbitals": ints.n_spin_orbitals, **h.to_json()}, indent=1)
    else:
        body = report + "\n" + h.to_text()
    _emit(body, args.output)
    print(report.lstrip("# "), file=sys.stderr)
    return EXIT_OK


# plan

def _load_hamiltonian(ref: str, scheme: EncodingScheme, freeze, remove) -> WeightedPauliSum:
    p = Path(ref)
    if p.exists():
        text = p.read_text(encoding="utf-8")
        head = text.lstrip()[:10].upper()
        if head.startswith("{"):
            return WeightedPauliSum.from_json(json.loads(text)).real()
        if not head.startswith("&FCI"):
            return WeightedPauliSum.from_text(text).real()
    return _encode_ints(_load_integrals(ref, freeze, remove), scheme)


def cmd_plan(args) -> int:
    h = _load_hamiltonian(args.hamiltonian, EncodingScheme.parse(args.scheme), args.freeze, args.remove)
    greedy = greedy_plan(h)
    greedy.validate()
    n_terms = greedy.n_terms_covered
    rows = {
        "n_qubits": h.n_qubits,
        "naive_count": n_terms,
        "greedy_groups": greedy.n_groups,
        "reduction_factor": greedy.reduction_factor,
    }
    if args.exact:
        if n_terms > EXACT_MAX_TERMS:
            raise InputError(f"--exact supports at most {EXACT_MAX_TERMS} non-identity terms, got {n_terms}")
        rows["optimal_groups"] = exact_plan(h).n_groups
    if args.groups:
        rows["groups"] = greedy.to_json()["groups"]
    _emit(json.dumps(rows, indent=1), args.output)
    return EXIT_OK


# config-driven commands

def _cli_path(ref: str | None) -> str | None:
    """Command-line paths are relative to the working directory, not the config file."""
    if ref is None or not Path(ref).exists():
        return ref
    return str(Path(ref).resolve())


def _config(args) -> RunConfig:
    cfg = RunConfig.load(args.config) if args.config else RunConfig()
    output = dict(cfg.output)
    for kind in ("csv", "json"):
        val = getattr(args, kind, None)
        if val is not None:
            output[kind] = str(Path(val).resolve())
    return cfg.override(
        manifest=_cli_path(getattr(args, "manifest", None)),
        fcidump=_cli_path(getattr(args, "fcidump", None)),
        scheme=args.scheme,
        mode=getattr(args, "mode", None),
        shots=args.shots,
        workers=args.workers,
        seed=args.seed,
        warm_start=False if getattr(args, "no_warm_start", False) else None,
        ansatz={**cfg.ansatz, "level": args.level} if getattr(args, "level", None) else None,
        optimizer={**cfg.optimizer, "kind": args.optimizer} if getattr(args, "optimizer", None) else None,
        output=output,
    )


def _write_outputs(cfg: RunConfig, csv_text: str, json_text: str) -> None:
    csv_path, json_path = cfg.output_path("csv"), cfg.output_path("json")
    if json_path is not None:
        _emit(json_text, json_path)
    _emit(csv_text, csv_path)
    for p in (csv_path, json_path):
        if p is not None:
            print(f"wrote {p}", file=sys.stderr)


def cmd_scan(args) -> int:
    cfg = _config(args)
    opt = cfg.optimizer_spec()
    rows = scan_dissociation(
        cfg.manifest_path(), cfg.active_space_spec(), cfg.scheme_spec(), cfg.ansatz_spec(), opt,
        cfg.mode, cfg.shots if cfg.mode == "sampled" else None, cfg.warm_start,
    )
    meta = {"scheme": cfg.scheme_spec().label, "ansatz": cfg.ansatz_spec().level, "optimizer": opt.note,
            "mode": cfg.mode, "warm_start": cfg.warm_start, "seed": cfg.seed}
    _write_outputs(cfg, scan_to_csv(rows), scan_to_json(rows, meta))
    worst = max((abs(r.error) for r in rows if r.error is not None), default=None)
    if worst is not None:
        print(f"max |E_vqe - E_exact| = {worst * 1e3:.4f} mHa over {len(rows)} geometries", file=sys.stderr)
    return EXIT_OK


def _problem(cfg: RunConfig) -> MolecularProblem:
    ints = parse_fcidump(cfg.fcidump_path())
    return MolecularProblem(ints, cfg.scheme_spec(), cfg.ansatz_spec(), cfg.active_space_spec())


def cmd_fidelity(args) -> int:
    cfg = _config(args)
    rates = dict(cfg.rates)
    for key in ("e_g1", "e_g2", "e_q"):
        val = getattr(args, key)
        if val is not None:
            rates[key] = _float_list(val)
    rates = {k: v if isinstance(v, list) else [v] for k, v in rates.items()}
    if cfg.fcidump is None:
        cfg = cfg.override(fcidump="h2")
    counts = transpile_and_count(_problem(cfg).ansatz, fuse_single_qubit=not args.unfused)
    print(f"G1={counts.g1} G2={counts.g2} Q={counts.q}", file=sys.stderr)
    rows = sweep(counts, rates["e_g1"], rates["e_g2"], rates["e_q"])
    _write_outputs(cfg, sweep_to_csv(rows), sweep_to_json(rows, counts))
    return EXIT_OK


def cmd_bench(args) -> int:
    cfg = _config(args)
    if cfg.fcidump is None:
        cfg = cfg.override(fcidump="lih")
    worker_counts = _int_list(args.worker_counts) if args.worker_counts else tuple(
        cfg.bench.get("workers", sorted({1, 2, 4, 8, cfg.n_workers()})))
    n_evals = args.n_evals or int(cfg.bench.get("n_evals", 3))
    prob = _problem(cfg)
    params = np.random.default_rng(cfg.seed).uniform(-0.1, 0.1, prob.ansatz.n_params)
    rows = benchmark_throughput(prob.plan, prob.ansatz, params, cfg.shots, worker_counts, n_evals, cfg.seed)
    lines = ["workers,evals_per_hour,seconds_per_eval,energy_hartree,max_groups_per_worker"]
    for r in rows:
        lines.append(f"{r.workers},{r.evals_per_hour!r},{r.seconds_per_eval!r},{r.energy!r},{r.max_groups_per_worker}")
    doc = {"n_groups": prob.plan.n_groups, "shots_per_group": cfg.shots, "rows": [r.__dict__ for r in rows]}
    _write_outputs(cfg, "\n".join(lines), json.dumps(doc, indent=1))
    energies = {r.energy for r in rows}
    print(f"{prob.plan.n_groups} groups; energy identical across worker counts: {len(energies) == 1}", file=sys.stderr)
    return EXIT_OK


# parser

def _add_space_flags(p) -> None:
    p.add_argument("--scheme", default="parity+taper", help="jordan_wigner | parity | parity+taper | bravyi_kitaev")
    p.add_argument("--freeze", type=_int_list, default=(), help="frozen doubly occupied orbitals, e.g. '0'")
    p.add_argument("--remove", type=_int_list, default=(), help="removed virtual orbitals, e.g. '4,5'")
    p.add_argument("-o", "--output", type=Path, help="write data here instead of stdout")


def _add_run_flags(p) -> None:
    p.add_argument("config", nargs="?", help="YAML or JSON run configuration")
    p.add_argument("--scheme")
    p.add_argument("--shots", type=int)
    p.add_argument("--workers", type=int, help="worker processes (default: available cores)")
    p.add_argument("--seed", type=int)
    p.add_argument("--csv", help="CSV output path (default: stdout)")
    p.add_argument("--json", help="JSON output path")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vqemu", description="Hardware-free VQE emulation for small molecules.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="encode an FCIDUMP into a qubit Hamiltonian")
    p.add_argument("fcidump", nargs="?", help="FCIDUMP path or bundled fixture name")
    _add_space_flags(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--scaling", action="store_true", help="term-count report over the bundled scaling family")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("plan", help="measurement grouping report")
    p.add_argument("hamiltonian", help="Hamiltonian dump (text or JSON), FCIDUMP path or fixture name")
    _add_space_flags(p)
    p.add_argument("--exact", action="store_true", help=f"also compute the optimal plan (<= {EXACT_MAX_TERMS} terms)")
    p.add_argument("--groups", action="store_true", help="include the group listing")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("scan", help="bond dissociation scan")
    _add_run_flags(p)
    p.add_argument("--manifest", help="manifest path, or 'h2' / 'lih' for the bundled scans")
    p.add_argument("--level", choices=("UCCS", "UCCSD"))
    p.add_argument("--optimizer", choices=("nelder_mead", "bfgs_numeric_gradient", "spsa"))
    p.add_argument("--mode", choices=("exact", "sampled"))
    p.add_argument("--no-warm-start", action="store_true")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("fidelity", help="error-model fidelity sweep of the transpiled ansatz")
    _add_run_flags(p)
    p.add_argument("--fcidump", help="FCIDUMP path or fixture name (default: h2)")
    p.add_argument("--level", choices=("UCCS", "UCCSD"))
    p.add_argument("--e-g1", dest="e_g1", help="single-qubit gate error rates, comma separated")
    p.add_argument("--e-g2", dest="e_g2", help="two-qubit gate error rates")
    p.add_argument("--e-q", dest="e_q", help="SPAM error rates")
    p.add_argument("--unfused", action="store_true", help="count every expanded single-qubit gate")
    p.set_defaults(func=cmd_fidelity)

    p = sub.add_parser("bench", help="energy evaluations per hour vs worker count")
    _add_run_flags(p)
    p.add_argument("--fcidump", help="FCIDUMP path or fixture name (default: lih)")
    p.add_argument("--worker-counts", help="e.g. '1,2,4,8'")
    p.add_argument("--n-evals", type=int)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ConfigError, FCIDUMPError, ManifestError, FileNotFoundError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"vqemu {args.command}: error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    except (OptimizerDivergence, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"vqemu {args.command}: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
