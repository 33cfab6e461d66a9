"""Seed handling: one project-wide default so runs are reproducible."""

import os

DEFAULT_SEED = 0xA11CE

ENV_VAR = "MAXTORUS_SEED"


def default_seed() -> int:
    """Default RNG seed, overridable through the MAXTORUS_SEED env var."""
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return DEFAULT_SEED
    return int(raw, 0)
