"""SplitMix64 stream and a keyed Fisher-Yates permutation.

Both are defined bit-exactly so that any implementation given the same
64-bit key visits pixels in the same order.
"""
from functools import lru_cache

import numpy as np

from .errors import RangeError
from .validation import check_key

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _mix(z):
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Scalar SplitMix64 generator over Python ints.

    >>> g = SplitMix64(0)
    >>> hex(g.next())
    '0xe220a8397b1dcdaf'
    """

    def __init__(self, seed):
        self.state = int(seed) & MASK64

    def next(self):
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return _mix(self.state)

    def bounded(self, bound):
        """Uniform integer in [0, bound) by rejection on full 64-bit draws.

        Draws x until x < bound * floor(2**64 / bound), then returns x % bound.
        """
        limit = ((1 << 64) // bound) * bound
        while True:
            x = self.next()
            if x < limit:
                return x % bound


def splitmix64_array(seed, n):
    """First ``n`` outputs of SplitMix64(seed) as a uint64 array.

    The k-th state is ``seed + (k+1)*gamma`` so the stream vectorizes; it is
    identical to calling :meth:`SplitMix64.next` ``n`` times.
    """
    k = np.arange(1, n + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(int(seed) & MASK64) + k * np.uint64(GOLDEN_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def random_bits(seed, n):
    """``n`` pseudorandom bits (uint8 0/1): each 64-bit output yields 64 bits, MSB first."""
    words = splitmix64_array(seed, (n + 63) // 64)
    bits = np.unpackbits(words.astype(">u8").view(np.uint8))
    return bits[:n]


def _fisher_yates(key, n):
    rng = SplitMix64(key)
    perm = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.bounded(i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    return perm


@lru_cache(maxsize=8)
def _cached_permutation(key, n):
    arr = np.array(_fisher_yates(key, n), dtype=np.int64)
    arr.setflags(write=False)
    return arr


def pixel_permutation(key, n):
    """Keyed permutation of ``range(n)``.

    Fisher-Yates from index n-1 down to 1 over the identity array, with
    ``j`` drawn uniformly from ``[0, i]`` via :meth:`SplitMix64.bounded`.
    The returned array is read-only and cached per ``(key, n)``.
    """
    if n < 1:
        raise RangeError(f"pixel count must be >= 1, got {n}")
    return _cached_permutation(check_key(key), int(n))
