"""Seed-stream derivation.

Every run derives its generator from (master seed, stream indices), so
results are bit-reproducible no matter how repetitions are scheduled
across workers.
"""

from __future__ import annotations

import numpy as np


def derive_rng(master_seed: int, *stream: int) -> np.random.Generator:
    """Independent PCG64 stream keyed by (master_seed, *stream)."""
    seq = np.random.SeedSequence([int(master_seed), *[int(s) for s in stream]])
    return np.random.Generator(np.random.PCG64(seq))


def derive_run_seed(master_seed: int, *stream: int) -> int:
    """64-bit integer seed derived from (master_seed, *stream)."""
    seq = np.random.SeedSequence([int(master_seed), *[int(s) for s in stream]])
    return int(seq.generate_state(1, np.uint64)[0])
