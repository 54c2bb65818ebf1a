"""Runtime configuration: enumeration guards and float tolerances.

All values can be overridden per call site, via CLI flags, or via
environment variables with the ``BRAIDFORGE_`` prefix
(``BRAIDFORGE_ENUM_GUARD=512`` etc.).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import BadParameter

ENV_PREFIX = "BRAIDFORGE_"


@dataclass(frozen=True)
class Config:
    tolerance: float = 1e-6
    enum_guard: int = 256
    aut_guard: int = 64
    rank_guard: int = 12
    output: str = "json"
    # automorphism groups larger than this are refused outright; the
    # |G| <= aut_guard test alone does not bound |Aut(G)| usefully
    # (elementary abelian groups have huge GL stabilizers).
    aut_count_cap: int = 2_000_000

    def __post_init__(self):
        if not (0.0 < self.tolerance < 1e-2):
            raise BadParameter("tolerance must lie in (0, 1e-2)")
        for name in ("enum_guard", "aut_guard", "rank_guard", "aut_count_cap"):
            if getattr(self, name) <= 0:
                raise BadParameter(f"{name} must be positive")
        if self.output not in ("json", "text"):
            raise BadParameter("output must be 'json' or 'text'")


def from_env(**overrides) -> Config:
    """Build a Config from BRAIDFORGE_* environment variables plus overrides."""
    kwargs = {}
    for field, conv in (
        ("tolerance", float),
        ("enum_guard", int),
        ("aut_guard", int),
        ("rank_guard", int),
        ("output", str),
        ("aut_count_cap", int),
    ):
        raw = os.environ.get(ENV_PREFIX + field.upper())
        if raw is not None:
            try:
                kwargs[field] = conv(raw)
            except ValueError as exc:
                raise BadParameter(f"bad {ENV_PREFIX}{field.upper()}: {raw!r}") from exc
    kwargs.update(overrides)
    return Config(**kwargs)


DEFAULT = Config()
