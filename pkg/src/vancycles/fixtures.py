"""Bundled data files: reference spectra, eigen-entries and degeneration scenarios."""
from __future__ import annotations

import json
from importlib import resources

from .errors import InputError
from .spectra import EigenEntry, Q, WeightedSpectrum

_ROOT = resources.files("vancycles") / "fixtures"


def _read(path):
    try:
        return json.loads(path.read_text())
    except FileNotFoundError:
        raise InputError(f"no fixture {path.name!r}") from None


def load_fixture(name: str) -> dict:
    return _read(_ROOT / f"{name}.json")


def load_scenario(name: str) -> dict:
    return _read(_ROOT / "scenarios" / f"{name}.json")


def scenario_names() -> list:
    return sorted(p.name[:-5] for p in (_ROOT / "scenarios").iterdir() if p.name.endswith(".json"))


def golden_cases() -> list:
    return [_read(p) for p in sorted((_ROOT / "golden").iterdir(), key=lambda p: p.name)
            if p.name.endswith(".json")]


def spectrum_rows(rows) -> WeightedSpectrum:
    """[[alpha, w, mult, ...], ...] or [{"alpha", "w", "mult"}, ...]."""
    if rows and isinstance(rows[0], dict):
        return WeightedSpectrum.from_json(rows)
    return WeightedSpectrum(((Q(r[0]), int(r[1])), int(r[2])) for r in rows)


def entry_rows(rows) -> list:
    """[[alpha, w, beta, mult], ...] or eigen-entry dicts."""
    if rows and isinstance(rows[0], dict):
        return [EigenEntry.from_json(r) for r in rows]
    return [EigenEntry(Q(a), int(w), Q(b), int(m)) for a, w, b, m in rows]
