"""Deterministic counter-based random streams for Monte-Carlo trials.

Trials are partitioned into fixed-width blocks and block b draws from a
Philox generator keyed by (seed, b).  Every block generates draws for its
full width in a fixed per-trial layout and slices off what it needs, so the
outcome of trial i depends only on the seed, i, and the estimator's draw
layout -- never on scheduling order, degree of parallelism, or the total
trial count.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

__all__ = ["check_seed", "trial_blocks"]


def check_seed(seed: int) -> int:
    """Validate a 64-bit unsigned seed and return it as a plain int."""
    if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool):
        raise ValueError(f"seed must be an integer, got {seed!r}")
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be in [0, 2**64), got {seed}")
    return seed


def trial_blocks(
    seed: int, trials: int, block: int
) -> Iterator[tuple[int, int, np.random.Generator]]:
    """Yield (start, stop, generator) covering range(trials) in keyed blocks.

    The generator for block b is Philox keyed by (seed, b); callers must
    always draw the full block's worth of variates and slice to stop-start.
    """
    seed = check_seed(seed)
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if block < 1:
        raise ValueError(f"block must be >= 1, got {block}")
    for b in range((trials + block - 1) // block):
        start = b * block
        stop = min(start + block, trials)
        key = np.array([seed, b], dtype=np.uint64)
        yield start, stop, np.random.Generator(np.random.Philox(key=key))
