from __future__ import annotations

from typing import Any

import numpy as np

from bgsa.exceptions import ConfigError

MAX_SEED = 2**63


def resolve_seed(raw: dict[str, Any], section: str) -> int:
    """The configured seed, or a fresh one written back into `raw` so the run record holds it."""
    seed = raw.get('seed')
    if seed is None:
        seed = int(np.random.SeedSequence().entropy % MAX_SEED)
        raw['seed'] = seed
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < MAX_SEED:
        raise ConfigError(f"[{section}] seed must be an integer in [0, 2^63), got {seed!r}")
    return seed
