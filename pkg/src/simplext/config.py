"""Enumeration budgets.

Defaults can be overridden through the ``SIMPLEXT_BUDGET`` environment
variable, either as a bare integer (applied to every budget) or as a comma
separated list such as ``subsets=100000,lattice=5000``.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

from .errors import InputError


@dataclass(frozen=True)
class Budget:
    subsets: int = 2_000_000  # constraint subsets tried by vertex enumeration
    vertices: int = 2_000  # nodes of a skeleton built by pairwise LPs
    lattice: int = 20_000  # faces in a face lattice
    items: int = 200_000  # combinatorial objects (trees, paths, matchings)
    pairs: int = 2_000_000  # seed pairs in a closure sweep
    cover_nodes: int = 30  # graph size for the exact cover search

    def __post_init__(self):
        for f in dataclasses.fields(self):
            if getattr(self, f.name) <= 0:
                raise InputError(f"budget {f.name} must be positive")


def parse_budget(raw: str, base: Budget | None = None) -> Budget:
    """Parse ``"N"`` or ``"key=N,key=N"``; unspecified keys keep ``base``'s values."""
    base = base or Budget()
    raw = raw.strip()
    if not raw:
        return base
    try:
        if "=" not in raw:
            value = int(raw)
            return Budget(**{f.name: value for f in dataclasses.fields(Budget)})
        kwargs = {}
        for part in raw.split(","):
            key, _, value = part.partition("=")
            kwargs[key.strip()] = int(value)
        return dataclasses.replace(base, **kwargs)
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad budget value {raw!r}") from exc


def default_budget() -> Budget:
    return parse_budget(os.environ.get("SIMPLEXT_BUDGET", ""))
