"""Reproducible random streams.

All randomness flows through counter-based Philox generators keyed by a
spawned SeedSequence, so a single integer seed yields independent,
order-stable substreams for chunked or parallel Monte Carlo.
"""

from __future__ import annotations

import numpy as np

__all__ = ["stream", "spawn_streams"]


def stream(seed) -> np.random.Generator:
    """One generator from an integer seed or SeedSequence."""
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    return np.random.Generator(np.random.Philox(seed))


def spawn_streams(seed, k: int) -> list[np.random.Generator]:
    """k independent generators derived from one seed."""
    root = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return [np.random.Generator(np.random.Philox(s)) for s in root.spawn(k)]
