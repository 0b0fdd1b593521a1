import random

import numpy as np


def derive_rng(seed, *keys):
    """Independent ``random.Random`` for ``(seed, *keys)``.

    Streams for different keys do not depend on the order they are requested in,
    so trials can be evaluated in any order or in parallel.
    """
    if seed < 0 or any(k < 0 for k in keys):
        raise ValueError("seeds and derivation keys must be non-negative")
    state = np.random.SeedSequence(seed, spawn_key=keys).generate_state(2, np.uint64)
    return random.Random((int(state[0]) << 64) | int(state[1]))
