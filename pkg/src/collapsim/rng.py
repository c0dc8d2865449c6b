"""Seeded random streams with cheap, collision-free per-trial derivation.

One master seed drives an experiment. Each trial gets its own generator,
derived as a keyed counter-mode function of (master seed, trial index), so
serial and parallel runs of the same experiment produce identical records.
"""

from __future__ import annotations

import numpy as np

from .errors import BadParameter

_MASK64 = (1 << 64) - 1


def master_rng(seed: int) -> np.random.Generator:
    """Top-level generator for an experiment run."""
    return trial_rng(seed)


def trial_rng(seed: int, *key: int) -> np.random.Generator:
    """Generator for one trial (or any sub-stream) of a seeded experiment.

    `key` may carry up to three non-negative indices (e.g. setting, trial).
    Streams with distinct keys never overlap: the key occupies the upper
    words of a Philox counter, leaving 2^64 draws per stream.
    """
    if len(key) > 3:
        raise BadParameter("at most 3 stream key components are supported")
    counter = [0, 0, 0, 0]
    for slot, component in enumerate(key, start=1):
        if component < 0:
            raise BadParameter("stream key components must be non-negative")
        counter[slot] = int(component) & _MASK64
    bit_gen = np.random.Philox(key=int(seed) & _MASK64, counter=counter)
    return np.random.Generator(bit_gen)


def sample_index(rng: np.random.Generator, probs: np.ndarray) -> int:
    """Draw an index from a (possibly sub-normalized) probability vector."""
    cum = np.cumsum(np.asarray(probs, dtype=float))
    idx = int(np.searchsorted(cum, rng.random() * cum[-1], side="right"))
    return min(idx, len(cum) - 1)
