"""SplitMix64: a tiny, portable 64-bit generator.

Seeds reproduce bit-identically in any language, which is why the injectors
use it instead of numpy's generators. Because the state simply advances by a
fixed odd increment, a block of ``n`` outputs can be produced in one vector
operation; :meth:`Rng64.next_array` does that and matches ``n`` scalar
:meth:`Rng64.next` calls exactly.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_INV_2_53 = 1.0 / (1 << 53)


class Rng64:
    def __init__(self, seed=0):
        self.state = int(seed) & MASK64

    def next(self):
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        return z ^ (z >> 31)

    def next_array(self, n):
        """Next ``n`` outputs as a uint64 array."""
        n = int(n)
        if n < 0:
            raise ValueError("n must be nonnegative")
        steps = np.arange(1, n + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            z = np.uint64(self.state) + steps * np.uint64(GOLDEN_GAMMA)
            z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        z ^= z >> np.uint64(31)
        self.state = (self.state + n * GOLDEN_GAMMA) & MASK64
        return z

    def uniform(self):
        """Float in [0, 1) built from the top 53 bits."""
        return (self.next() >> 11) * _INV_2_53

    def uniform_array(self, n):
        return (self.next_array(n) >> np.uint64(11)).astype(np.float64) * _INV_2_53

    def below(self, n):
        """Integer in [0, n) as ``floor(uniform() * n)``."""
        if n <= 0:
            raise ValueError("n must be positive")
        return min(int(self.uniform() * n), n - 1)

    def bit(self):
        """One fair bit taken from the top of the next output."""
        return self.next() >> 63

    def bit_array(self, n):
        return (self.next_array(n) >> np.uint64(63)).astype(np.uint8)
