"""Bundled STO-3G FCIDUMP fixtures and their reference energies."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .chem import SpinOrbitalIntegrals, parse_fcidump

_DATA = resources.files("vqemu") / "data"


@lru_cache(maxsize=None)
def _index() -> dict:
    return json.loads((_DATA / "fixtures.json").read_text())


def names() -> list[str]:
    return sorted(k for k in _index() if not k.startswith("_"))


def metadata(name: str) -> dict:
    try:
        return dict(_index()[name])
    except KeyError:
        raise KeyError(f"no fixture named {name!r}") from None


def path(name: str) -> Path:
    return Path(str(_DATA / metadata(name)["file"]))


def load(name: str) -> SpinOrbitalIntegrals:
    return parse_fcidump(path(name))


def manifest(molecule: str) -> Path:
    """Bond-scan manifest (``h2`` or ``lih``)."""
    p = Path(str(_DATA / "fcidump" / f"{molecule}_scan.manifest"))
    if not p.exists():
        raise KeyError(f"no scan manifest for {molecule!r}")
    return p


def scaling_family() -> list[str]:
    """Fixtures spanning 4 to 16 spin orbitals used for term-count scaling."""
    return list(_index()["_scaling_family"])
