"""Seeded random streams.

Every consumer of randomness gets its own Philox stream keyed by the master
seed plus a tuple of small integers (purpose, group, replication, ...). The
streams are independent of one another and of the order or thread they are
consumed in.
"""

import numpy as np

__all__ = ["BOOTSTRAP", "DATA", "QUANTILE", "REPLICATION", "make_rng", "derive_seed", "open_uniform"]

BOOTSTRAP = 1
DATA = 2
QUANTILE = 3
REPLICATION = 4

_MAX_SEED = 2**64 - 1


def _seed_sequence(seed, key):
    seed = int(seed)
    if not 0 <= seed <= _MAX_SEED:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return np.random.SeedSequence(seed, spawn_key=tuple(int(k) for k in key))


def make_rng(seed, *key):
    """Generator for the stream identified by `seed` and `key`."""
    if isinstance(seed, np.random.Generator):
        if key:
            raise TypeError("a Generator cannot be combined with a stream key")
        return seed
    return np.random.Generator(np.random.Philox(_seed_sequence(seed, key)))


def derive_seed(seed, *key):
    """Child 64-bit seed for the stream identified by `seed` and `key`."""
    return int(_seed_sequence(seed, key).generate_state(1, np.uint64)[0])


def open_uniform(rng, size=None):
    """Uniform draws on the open interval (0, 1), 53-bit resolution."""
    k = rng.integers(0, 2**53, size=size, dtype=np.int64)
    return (k + 0.5) / 2.0**53
