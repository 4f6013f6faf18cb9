"""Built-in conjugate pairs shipped as pair bundles under ``data/``."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .conjugate_pair import ConjugatePair, load_pair

BUILTIN = ("steane", "css422", "trivial", "gf4", "gf4-expanded")


def data_dir() -> Path:
    return Path(str(resources.files("conjcodes") / "data"))


def manifest_path(name: str) -> Path:
    if name not in BUILTIN:
        raise KeyError(f"unknown built-in pair {name!r}; choose from {BUILTIN}")
    return data_dir() / f"{name}.json"


def load_builtin(name: str) -> ConjugatePair:
    return load_pair(manifest_path(name))


def steane() -> ConjugatePair:
    """C1 = C2 = [7,4] Hamming code, k = 1."""
    return load_builtin("steane")


def css422() -> ConjugatePair:
    """C1 = C2 = [4,3] even-weight code, k = 2."""
    return load_builtin("css422")
