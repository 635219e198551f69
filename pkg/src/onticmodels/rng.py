"""Frozen, seedable pseudo-randomness.

Everything stochastic in this package draws from SplitMix64 (Steele,
Lea & Flood 2014).  The algorithm is pinned here rather than delegated
to ``random`` or numpy so that seeded runs stay bit-identical across
Python and library versions.
"""
from __future__ import annotations

import math

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 finalizer: a fixed 64-bit bijective scramble."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def derive_seed(master: int, counter: int) -> int:
    """Counter-based substream seed: the (counter+1)-th raw SplitMix64 output."""
    return mix64((master + (counter + 1) * _GAMMA) & _MASK)


class SplitMix64:
    """Minimal 64-bit generator with rejection-sampled bounded draws."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        return mix64(self._state)

    def uniform(self) -> float:
        """Uniform double in [0, 1), 53 significant bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def randrange(self, n: int) -> int:
        """Unbiased integer in [0, n) via rejection sampling."""
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def gauss_pair(self) -> tuple[float, float]:
        """Two independent standard normals (Box-Muller)."""
        # u1 in (0, 1] keeps the log finite
        u1 = ((self.next_u64() >> 11) + 1) * 2.0**-53
        u2 = (self.next_u64() >> 11) * 2.0**-53
        r = math.sqrt(-2.0 * math.log(u1))
        return r * math.cos(2.0 * math.pi * u2), r * math.sin(2.0 * math.pi * u2)
