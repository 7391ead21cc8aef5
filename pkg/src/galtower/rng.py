"""SplitMix64, the seeded generator behind every sampled specialization.

The generator is tiny and fully specified so that reports can be reproduced
bit for bit by other implementations:

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)

all arithmetic modulo 2**64.  Bounded draws use rejection sampling on the
top of the 64-bit range (see ``below``).
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) for 1 <= n <= 2**64."""
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def big_below(self, n: int) -> int:
        """Uniform integer in [0, n) for arbitrary n, built from 64-bit words."""
        if n <= (1 << 64):
            return self.below(n)
        words = (n.bit_length() + 63) // 64
        span = 1 << (64 * words)
        limit = span - (span % n)
        while True:
            x = 0
            for _ in range(words):
                x = (x << 64) | self.next_u64()
            if x < limit:
                return x % n

    def fork(self, tag: int) -> "SplitMix64":
        """Independent child stream; used to keep sub-suites decoupled."""
        return SplitMix64(self.next_u64() ^ (tag * 0xD1B54A32D192ED03 & MASK64))
