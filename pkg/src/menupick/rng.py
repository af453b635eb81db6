"""Seedable random stream with O(1) position access.

All randomness in this package (instance generation and partition
sampling) comes from one generator family so that runs are reproducible
from a single 64-bit seed, bit for bit, in any implementation of the same
contract. The contract:

* Word ``i`` of the stream for ``seed`` is ``mix64((seed + (i+1) * GOLDEN)
  mod 2**64)`` where ``GOLDEN = 0x9E3779B97F4A7C15`` and ``mix64`` is the
  splitmix64 finalizer (xor-shift 30, multiply 0xBF58476D1CE4E5B9,
  xor-shift 27, multiply 0x94D049BB133111EB, xor-shift 31).
* Bit ``p`` of the stream is bit ``p mod 64`` (least significant first) of
  word ``p // 64``.
* A uniform double at index ``i`` is ``(word(i) >> 11) * 2**-53``.
* Derived stream ``lane`` of a master seed is seeded with word ``lane`` of
  the master stream; masters used for derivation draw nothing else.

Positions are absolute, so any word or bit can be computed without
generating its predecessors. That keeps parallel consumers deterministic:
they address the stream by position instead of sharing mutable state.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """splitmix64 output finalizer on a 64-bit state."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def word_at(seed: int, index: int) -> int:
    """64-bit word ``index`` (0-based) of the stream for ``seed``."""
    if index < 0:
        raise ValueError("stream index must be non-negative")
    return mix64((seed + (index + 1) * GOLDEN) & _MASK64)


def bit_at(seed: int, position: int) -> int:
    """Bit ``position`` of the stream, LSB-first within each word."""
    return (word_at(seed, position >> 6) >> (position & 63)) & 1


def unit_at(seed: int, index: int) -> float:
    """Uniform double in [0, 1) from word ``index``."""
    return (word_at(seed, index) >> 11) * 2.0**-53


def below_at(seed: int, index: int, bound: int) -> int:
    """Integer in [0, bound) from word ``index`` (fixed-point scaling)."""
    if bound <= 0:
        raise ValueError("bound must be positive")
    return (word_at(seed, index) * bound) >> 64


def substream_seed(master_seed: int, lane: int) -> int:
    """Seed for derived stream ``lane`` of ``master_seed``."""
    return word_at(master_seed, lane)


class BitStream:
    """Sequential cursor over the bit stream of one seed.

    ``take_bit`` returns the bit at the cursor and advances it; the cursor
    therefore equals the number of bits consumed so far, which makes the
    mapping between sequential draws and absolute positions explicit.
    """

    def __init__(self, seed: int, position: int = 0):
        self.seed = seed & _MASK64
        self.position = position

    def take_bit(self) -> int:
        bit = bit_at(self.seed, self.position)
        self.position += 1
        return bit

    def take_bits(self, count: int) -> list[int]:
        return [self.take_bit() for _ in range(count)]
