"""Deterministic 64-bit PRNG with derivable substreams.

All randomness in the workbench flows through this module so that a master
seed plus derivation indices always reproduces bitwise-identical streams,
independent of platform, library version, or worker scheduling.  The
generator is splitmix64; substreams are derived by folding indices into the
seed with the same finaliser.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1

# splitmix64 constants (Steele, Lea & Flood's SplittableRandom finaliser).
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _mix64(z: int) -> int:
    z = (z ^ (z >> 30)) * _MIX1 & _MASK
    z = (z ^ (z >> 27)) * _MIX2 & _MASK
    return z ^ (z >> 31)


def mix(seed: int, *indices: int) -> int:
    """Derive a substream seed from a master seed and derivation indices.

    Same (seed, indices) always yields the same value; distinct index tuples
    yield statistically independent streams.
    """
    z = seed & _MASK
    for idx in indices:
        z = _mix64((z + _GAMMA * ((idx & _MASK) + 1)) & _MASK)
    return z


class Stream:
    """splitmix64 stream of 64-bit words with uniform helpers."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        return _mix64(self._state)

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) via rejection (no modulo bias)."""
        if n <= 0:
            raise ValueError("randbelow needs a positive bound")
        limit = _MASK - (_MASK + 1) % n
        while True:
            r = self.next_u64()
            if r <= limit:
                return r % n

    def uniform(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (2.0 ** -53)

    def shuffle(self, items: list) -> None:
        """Unbiased in-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]
