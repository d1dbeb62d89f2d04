"""Seedable uniform random stream for reproducible simulations."""
from __future__ import annotations

import numpy as np


class RandomStream:
    """Deterministic pseudo-random stream of uniform reals in (0, 1).

    Identical seeds produce identical streams.  Seeds may be a single
    integer or a tuple of integers; tuples let callers derive independent
    child streams (see :meth:`spawn`) without coordinating offsets.
    """

    def __init__(self, seed: int | tuple[int, ...]):
        if isinstance(seed, (tuple, list)):
            self._entropy = tuple(int(s) for s in seed)
        else:
            self._entropy = (int(seed),)
        self._gen = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(self._entropy))
        )

    @property
    def seed(self) -> tuple[int, ...]:
        return self._entropy

    def uniform(self) -> float:
        """One uniform draw from (0, 1)."""
        return float(self._gen.random())

    def uniforms(self, n: int) -> np.ndarray:
        """Array of n uniform draws, identical to n successive uniform() calls."""
        return self._gen.random(n)

    def angle(self) -> float:
        """One uniform angle in [0, 2*pi)."""
        return 2.0 * np.pi * self.uniform()

    def spawn(self, *key: int) -> "RandomStream":
        """Independent child stream derived deterministically from this seed."""
        return RandomStream(self._entropy + tuple(int(k) for k in key))

    def generator(self) -> np.random.Generator:
        """Underlying numpy generator (shared state with this stream)."""
        return self._gen
