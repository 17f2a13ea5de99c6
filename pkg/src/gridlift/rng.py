"""Seeded 64-bit PRNG with a spelled-out algorithm.

Generators in this package must be reproducible from a seed across
implementations and languages, so we fix the exact algorithm here instead of
relying on the host language's default RNG:

- State update: splitmix64 (Steele, Lea, Flood 2014). One 64-bit word of
  state; each draw adds the odd constant 0x9E3779B97F4A7C15 and returns a
  mixed copy of the state.
- Bounded draws below(n): rejection sampling on the top of the 64-bit range.
  Let t = 2**64 - (2**64 % n). Draw u64 values until one is < t, then return
  value % n. This is exactly uniform on [0, n).

Any port that copies these two paragraphs reproduces our corpora bit for bit.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1


class SplitMix64:
    """splitmix64 stream seeded with an arbitrary Python int."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n), n >= 1, by rejection."""
        if n <= 0:
            raise ValueError("below() requires n >= 1")
        if n == 1:
            return 0
        threshold = (1 << 64) - ((1 << 64) % n)
        while True:
            u = self.next_u64()
            if u < threshold:
                return u % n
