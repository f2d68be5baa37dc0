"""Declarative run configuration (YAML or JSON).

Keys, all optional unless a command needs them::

    manifest: h2_scan.manifest      # scan geometries; relative to this file
    fcidump: lih.fcidump            # single geometry for fidelity / bench (path or bundled fixture name)
    scheme: parity+taper            # jordan_wigner | parity | parity+taper | bravyi_kitaev
    active_space: {frozen_occupied: [0], removed_virtual: []}
    ansatz: {level: UCCSD, trotter_steps: 1}
    optimizer: {kind: bfgs_numeric_gradient, max_evals: 20000, tolerance: 1.0e-8}
    mode: exact                     # exact | sampled
    shots: 10000                    # per measurement group, sampled mode and bench
    workers: 4                      # default: available cores
    seed: 0
    warm_start: true
    rates: {e_g1: [0.001], e_g2: [0.01], e_q: [0.01]}
    bench: {workers: [1, 2, 4, 8], n_evals: 3}
    output: {csv: scan.csv, json: scan.json}
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Mapping

import yaml

from . import fixtures
from .chem import ActiveSpaceSpec
from .encoding import EncodingScheme
from .vqe.ansatz import AnsatzSpec
from .vqe.optimizers import OptimizerSpec
from .vqe.parallel import default_workers


class ConfigError(ValueError):
    pass


def resolve_fcidump(ref: str | Path, base: Path | None = None) -> Path:
    """A filesystem path, or the name of a bundled fixture."""
    p = Path(ref)
    if base is not None and not p.is_absolute() and (base / p).exists():
        return base / p
    if p.exists():
        return p
    if str(ref) in fixtures.names():
        return fixtures.path(str(ref))
    raise ConfigError(f"no such FCIDUMP file or fixture: {ref}")


def resolve_manifest(ref: str | Path, base: Path | None = None) -> Path:
    p = Path(ref)
    if base is not None and not p.is_absolute() and (base / p).exists():
        return base / p
    if p.exists():
        return p
    try:
        return fixtures.manifest(str(ref))
    except KeyError:
        raise ConfigError(f"no such manifest: {ref}") from None


@dataclass
class RunConfig:
    manifest: str | None = None
    fcidump: str | None = None
    scheme: str = "parity+taper"
    active_space: dict = field(default_factory=dict)
    ansatz: dict = field(default_factory=dict)
    optimizer: dict = field(default_factory=dict)
    mode: str = "exact"
    shots: int = 10000
    workers: int | None = None
    seed: int = 0
    warm_start: bool = True
    rates: dict = field(default_factory=lambda: {"e_g1": [1e-3], "e_g2": [1e-2], "e_q": [1e-2]})
    bench: dict = field(default_factory=dict)
    output: dict = field(default_factory=dict)
    base_dir: Path | None = None

    @classmethod
    def from_mapping(cls, doc: Mapping[str, Any], base_dir: Path | None = None) -> RunConfig:
        if not isinstance(doc, Mapping):
            raise ConfigError("config must be a mapping of keys to values")
        known = {f.name for f in fields(cls)} - {"base_dir"}
        unknown = sorted(set(doc) - known)
        if unknown:
            raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
        cfg = cls(**dict(doc), base_dir=base_dir)
        cfg.validate()
        return cfg

    @classmethod
    def load(cls, path: str | Path) -> RunConfig:
        path = Path(path)
        try:
            doc = yaml.safe_load(path.read_text(encoding="utf-8"))
        except yaml.YAMLError as exc:
            mark = getattr(exc, "problem_mark", None)
            where = f"line {mark.line + 1}: " if mark is not None else ""
            raise ConfigError(f"{path}: {where}invalid YAML/JSON") from None
        return cls.from_mapping(doc or {}, path.parent)

    def override(self, **kw) -> RunConfig:
        cfg = replace(self, **{k: v for k, v in kw.items() if v is not None})
        cfg.validate()
        return cfg

    def validate(self) -> None:
        try:
            self.scheme_spec()
            self.active_space_spec()
            self.ansatz_spec()
            self.optimizer_spec()
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from None
        if self.mode not in ("exact", "sampled"):
            raise ConfigError(f"mode must be 'exact' or 'sampled', got {self.mode!r}")
        if int(self.shots) < 1:
            raise ConfigError("shots must be positive")
        if self.workers is not None and int(self.workers) < 1:
            raise ConfigError("workers must be at least 1")
        for key in ("e_g1", "e_g2", "e_q"):
            if key not in self.rates:
                raise ConfigError(f"rates.{key} missing")

    def scheme_spec(self) -> EncodingScheme:
        return EncodingScheme.parse(self.scheme)

    def active_space_spec(self) -> ActiveSpaceSpec:
        return ActiveSpaceSpec(**self.active_space)

    def ansatz_spec(self) -> AnsatzSpec:
        return AnsatzSpec(**self.ansatz)

    def optimizer_spec(self) -> OptimizerSpec:
        return OptimizerSpec(**{"seed": self.seed, **self.optimizer})

    def n_workers(self) -> int:
        return int(self.workers) if self.workers is not None else default_workers()

    def manifest_path(self) -> Path:
        if not self.manifest:
            raise ConfigError("no manifest given (config key 'manifest' or --manifest)")
        return resolve_manifest(self.manifest, self.base_dir)

    def fcidump_path(self) -> Path:
        if not self.fcidump:
            raise ConfigError("no FCIDUMP given (config key 'fcidump' or --fcidump)")
        return resolve_fcidump(self.fcidump, self.base_dir)

    def output_path(self, kind: str) -> Path | None:
        p = self.output.get(kind)
        if p is None:
            return None
        p = Path(p)
        return p if p.is_absolute() or self.base_dir is None else self.base_dir / p
