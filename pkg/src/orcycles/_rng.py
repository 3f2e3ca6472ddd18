"""Counter-based random streams keyed by (seed, task index...).

Every random draw in the package goes through :func:`stream` so that a
sharded or parallel run reproduces the serial one exactly.
"""

import numpy as np


def stream(seed: int, *key: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), *map(int, key)])))
