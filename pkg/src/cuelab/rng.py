"""Counter-based random streams for reproducible parallel Monte Carlo.

Each replicate owns a Philox generator keyed by (master seed, matrix size,
replicate index).  Philox is counter-based: the stream is a pure function
of its 128-bit key and the draw counter, so replicate r's sample never
depends on which other replicates run, in what order, or on how many
threads execute them.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_MASK32 = (1 << 32) - 1


def stream_key(master_seed: int, matrix_size: int, replicate: int) -> int:
    """Pack (seed, N, replicate) into a unique 128-bit Philox key."""
    if replicate < 0:
        raise ValueError(f"replicate index must be >= 0, got {replicate}")
    return ((master_seed & _MASK64) << 64) | ((matrix_size & _MASK32) << 32) \
        | (replicate & _MASK32)


def replicate_stream(master_seed: int, matrix_size: int,
                     replicate: int = 0) -> np.random.Generator:
    """Independent deterministic stream for one replicate of one N."""
    key = stream_key(master_seed, matrix_size, replicate)
    return np.random.Generator(np.random.Philox(key=key))
