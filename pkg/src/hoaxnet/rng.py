"""Seedable 64-bit random number generation for reproducible runs.

The generator is SplitMix64 (Steele, Lea & Flood 2014). Its output is a pure
function of ``(seed, position)``, so the k-th value of a stream can be
computed directly. That lets the simulator draw one uniform per node per tick
as a single vectorised numpy call, while the Python-level path used for
sampling produces exactly the same numbers.

    state_k = seed + k * 0x9E3779B97F4A7C15   (mod 2**64), k = 1, 2, ...
    output_k = mix64(state_k)

Uniform doubles take the top 53 bits: ``(output >> 11) * 2**-53``.
"""

from __future__ import annotations

from typing import MutableSequence, Sequence, TypeVar

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_INV_2_53 = 1.0 / (1 << 53)

T = TypeVar("T")


def mix64(z: int) -> int:
    """SplitMix64 finaliser on a Python int (an avalanche bijection on 64 bits)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def mix64_array(z: np.ndarray) -> np.ndarray:
    """Vectorised :func:`mix64` over a uint64 array (wrapping arithmetic)."""
    z = z ^ (z >> np.uint64(30))
    z = z * np.uint64(_M1)
    z = z ^ (z >> np.uint64(27))
    z = z * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def substream(seed: int, tag: int) -> int:
    """Derive an independent stream seed for a named purpose within one run."""
    return mix64((seed & MASK64) ^ mix64(GOLDEN_GAMMA * (tag + 1)))


class SplitMix64:
    """SplitMix64 stream with scalar and vectorised draws.

    >>> g = SplitMix64(0)
    >>> hex(g.next_u64())
    '0xe220a8397b1dcdaf'
    """

    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        self.state = int(seed) & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def random(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next_u64() >> 11) * _INV_2_53

    def randbelow(self, n: int) -> int:
        """Unbiased integer in [0, n) by rejection on the 64-bit output."""
        if n <= 0:
            raise ValueError(f"randbelow needs n > 0, got {n}")
        limit = ((1 << 64) // n) * n
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def u64s(self, n: int) -> np.ndarray:
        """The next ``n`` raw outputs as a uint64 array; advances the stream by n."""
        steps = np.arange(1, n + 1, dtype=np.uint64) * np.uint64(GOLDEN_GAMMA)
        states = steps + np.uint64(self.state)
        self.state = (self.state + n * GOLDEN_GAMMA) & MASK64
        return mix64_array(states)

    def uniforms(self, n: int) -> np.ndarray:
        """The next ``n`` uniform doubles, identical to ``n`` calls of :meth:`random`."""
        return (self.u64s(n) >> np.uint64(11)).astype(np.float64) * _INV_2_53

    def shuffle(self, x: MutableSequence[T]) -> None:
        """In-place Fisher-Yates shuffle, high index first."""
        for i in range(len(x) - 1, 0, -1):
            j = self.randbelow(i + 1)
            x[i], x[j] = x[j], x[i]

    def sample(self, population: Sequence[T], k: int) -> list[T]:
        """``k`` distinct items drawn without replacement (partial Fisher-Yates).

        The result is in draw order; callers that need a set should sort it.
        """
        pool = list(population)
        n = len(pool)
        if not 0 <= k <= n:
            raise ValueError(f"cannot sample {k} items from a population of {n}")
        for i in range(k):
            j = i + self.randbelow(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]
