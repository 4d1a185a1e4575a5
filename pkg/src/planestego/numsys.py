"""Pixel intensity decompositions over the seven weight systems.

A value in [0, 255] has, in general, several subset-sum representations over
a system's plane weights. The canonical one is the lexicographically greatest
bit string when written with the top plane leftmost. Everything here works on
8-bit values only; per-system lookup tables are built once and cached.
"""
import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import RangeError, StructuralError
from .validation import check_value

MAX_VALUE = 255


class System(enum.Enum):
    BINARY = "binary"
    FIBONACCI = "fibonacci"
    PRIME = "prime"
    NATURAL = "natural"
    LUCAS = "lucas"
    CATALAN_FIBONACCI = "cf"
    NEW = "new"

    @property
    def weights(self):
        return WEIGHTS[self]

    @property
    def plane_count(self):
        return len(WEIGHTS[self])

    @property
    def order(self):
        return _ORDER[self]


_ORDER = {s: i for i, s in enumerate(System)}

# plane 1 first
WEIGHTS = {
    System.BINARY: (1, 2, 4, 8, 16, 32, 64, 128),
    System.FIBONACCI: (1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233),
    System.PRIME: (1, 2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43),
    System.NATURAL: tuple(range(1, 24)),
    System.LUCAS: (2, 1, 3, 4, 7, 11, 18, 29, 47, 76, 123, 199),
    System.CATALAN_FIBONACCI: (1, 2, 3, 5, 8, 13, 14, 21, 34, 42, 55, 89, 132, 144, 233),
    System.NEW: (1, 2, 4, 6, 8, 10, 12, 14, 16, 20, 22, 24, 26, 28, 30, 32),
}

_ALIASES = {
    "catalan-fibonacci": System.CATALAN_FIBONACCI,
    "catalanfibonacci": System.CATALAN_FIBONACCI,
    "catalan_fibonacci": System.CATALAN_FIBONACCI,
    "newsystem": System.NEW,
    "ns": System.NEW,
}


def get_system(system):
    """Resolve a :class:`System` from an enum member or a case-insensitive name."""
    if isinstance(system, System):
        return system
    if isinstance(system, str):
        key = system.strip().lower()
        try:
            return System(key)
        except ValueError:
            pass
        if key in _ALIASES:
            return _ALIASES[key]
        for member in System:
            if member.name.lower() == key:
                return member
    names = ", ".join(s.value for s in System)
    raise RangeError(f"unknown number system {system!r}; expected one of {names}")


def weights(system):
    """Plane weights of ``system``, plane 1 (least significant) first."""
    return list(get_system(system).weights)


def new_system_weight(i):
    """Closed-form weight of plane ``i`` (1..16) in the 16-plane system."""
    if not 1 <= i <= 16:
        raise RangeError(f"plane must be in 1..16, got {i}")
    if i == 1:
        return 1
    if i <= 9:
        return 2 * (i - 1)
    return 2 * i


def check_plane(plane, system):
    system = get_system(system)
    if isinstance(plane, bool) or not isinstance(plane, (int, np.integer)):
        raise RangeError(f"plane must be an integer, got {plane!r}")
    if not 1 <= plane <= system.plane_count:
        raise RangeError(
            f"plane {plane} out of range for {system.value} (1..{system.plane_count})"
        )
    return int(plane)


@dataclass(frozen=True)
class CodeWord:
    """Bit vector over a system's planes; ``bits[0]`` is plane 1."""

    system: System
    bits: tuple

    def __post_init__(self):
        object.__setattr__(self, "system", get_system(self.system))
        bits = tuple(int(b) for b in self.bits)
        if len(bits) != self.system.plane_count:
            raise StructuralError(
                f"{self.system.value} words have {self.system.plane_count} bits, got {len(bits)}"
            )
        if any(b not in (0, 1) for b in bits):
            raise StructuralError("code word bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_string(cls, text, system):
        """Parse a bit string written top plane first."""
        return cls(system, tuple(int(c) for c in reversed(text.strip())))

    @classmethod
    def from_planes(cls, planes, system):
        """Word with exactly the given 1-based planes set."""
        system = get_system(system)
        bits = [0] * system.plane_count
        for p in planes:
            bits[check_plane(p, system) - 1] = 1
        return cls(system, tuple(bits))

    def __str__(self):
        return "".join(str(b) for b in reversed(self.bits))

    @property
    def value(self):
        return recompose(self)

    @property
    def canonical(self):
        return is_canonical(self)

    def with_bit(self, plane, bit):
        plane = check_plane(plane, self.system)
        bits = list(self.bits)
        bits[plane - 1] = int(bit)
        return CodeWord(self.system, tuple(bits))


class Codec:
    """Lookup tables for one system over values 0..255.

    Attributes
    ----------
    weights : ndarray of shape (n_planes,)
    canonical_bits : ndarray of shape (256, n_planes), uint8
        Canonical word of every value; column ``p-1`` is plane ``p``.
    canonical_mask : ndarray of shape (256,)
        The same words packed as integers, bit ``p-1`` for plane ``p``.
    embeddable : ndarray of shape (256, n_planes), bool
    set_value : ndarray of shape (256, n_planes, 2), int16
        Value obtained by forcing a plane bit to 0 or 1 in the canonical word.
    """

    def __init__(self, system):
        self.system = system
        w = np.array(system.weights, dtype=np.int64)
        self.weights = w
        n = len(w)
        reach = _prefix_reachability(system.weights)
        bits = np.zeros((MAX_VALUE + 1, n), dtype=np.uint8)
        for v in range(MAX_VALUE + 1):
            bits[v] = _lexmax_bits(v, system.weights, reach)
        self.canonical_bits = bits
        self.canonical_mask = (bits.astype(np.int64) << np.arange(n)).sum(axis=1)

        values = np.arange(MAX_VALUE + 1)
        set_value = np.empty((MAX_VALUE + 1, n, 2), dtype=np.int16)
        for p in range(n):
            cleared = values - bits[:, p] * w[p]
            set_value[:, p, 0] = cleared
            set_value[:, p, 1] = cleared + w[p]
        self.set_value = set_value

        masks = self.canonical_mask
        emb = np.ones((MAX_VALUE + 1, n), dtype=bool)
        for p in range(n):
            for b in (0, 1):
                target = set_value[:, p, b].astype(np.int64)
                word = (masks & ~(1 << p)) | (b << p)
                ok = target <= MAX_VALUE
                ok[ok] = masks[target[ok]] == word[ok]
                emb[:, p] &= ok
        self.embeddable = emb
        for arr in (self.weights, self.canonical_bits, self.canonical_mask,
                    self.set_value, self.embeddable):
            arr.setflags(write=False)


def _prefix_reachability(ws):
    """reach[k] is an int bitmask of sums (<= 255) formed by the lowest k planes."""
    full = (1 << (MAX_VALUE + 1)) - 1
    reach = [1]
    for w in ws:
        reach.append((reach[-1] | (reach[-1] << w)) & full)
    return reach


def _lexmax_bits(value, ws, reach):
    # Top plane down: set a bit whenever the remainder stays reachable below it.
    n = len(ws)
    if not (reach[n] >> value) & 1:
        raise RangeError(f"{value} is not representable")
    out = [0] * n
    rest = value
    for k in range(n - 1, -1, -1):
        r = rest - ws[k]
        if r >= 0 and (reach[k] >> r) & 1:
            out[k] = 1
            rest = r
    return out


@lru_cache(maxsize=None)
def _codec(system):
    return Codec(system)


def get_codec(system):
    return _codec(get_system(system))


def canonicalize(value, system):
    """Canonical (lexicographically greatest) code word of ``value``.

    >>> str(canonicalize(44, "new"))
    '1000000001000000'
    """
    value = check_value(value)
    codec = get_codec(system)
    return CodeWord(codec.system, tuple(codec.canonical_bits[value].tolist()))


def recompose(word):
    """Weighted sum of a code word's set planes."""
    if not isinstance(word, CodeWord):
        raise StructuralError(f"expected a CodeWord, got {type(word).__name__}")
    return sum(b * w for b, w in zip(word.bits, word.system.weights))


def is_canonical(word):
    value = recompose(word)
    if value > MAX_VALUE:
        return False
    codec = get_codec(word.system)
    return tuple(codec.canonical_bits[value].tolist()) == word.bits


def embeddable(value, plane, system):
    """True iff both settings of ``plane`` in the canonical word stay canonical."""
    value = check_value(value)
    codec = get_codec(system)
    plane = check_plane(plane, codec.system)
    return bool(codec.embeddable[value, plane - 1])


def representation_masks(system, planes=None):
    """Every subset-sum representation of every value 0..255, as packed masks.

    Returns a list of 256 sorted int64 arrays; bit ``p-1`` of a mask is plane
    ``p``. Built by dynamic programming over planes, so the 23-plane Natural
    system never enumerates all 2**23 subsets. ``planes`` restricts the search
    to the lowest ``planes`` planes.
    """
    ws = get_system(system).weights
    if planes is not None:
        if not 1 <= planes <= len(ws):
            raise RangeError(f"planes must be in 1..{len(ws)}, got {planes}")
        ws = ws[:planes]
    empty = np.empty(0, dtype=np.int64)
    table = [empty] * (MAX_VALUE + 1)
    table[0] = np.zeros(1, dtype=np.int64)
    for k, w in enumerate(ws):
        bit = np.int64(1 << k)
        nxt = list(table)
        for s in range(w, MAX_VALUE + 1):
            prev = table[s - w]
            if prev.size:
                nxt[s] = np.concatenate([table[s], prev | bit])
        table = nxt
    return [np.sort(t) for t in table]


def all_representations(value, system, planes=None):
    """Set of all representations of ``value`` as bit tuples (plane 1 first)."""
    value = check_value(value)
    n = get_system(system).plane_count if planes is None else planes
    masks = representation_masks(system, planes)[value]
    return {tuple((int(m) >> k) & 1 for k in range(n)) for m in masks}


def build_table(system, lo=0, hi=MAX_VALUE):
    """(value, canonical bit string) for each value in ``[lo, hi]``."""
    lo, hi = check_value(lo), check_value(hi)
    if lo > hi:
        raise RangeError(f"empty range: lo={lo} > hi={hi}")
    return [(v, str(canonicalize(v, system))) for v in range(lo, hi + 1)]


def format_table(rows):
    return "".join(f"{v}\t{s}\n" for v, s in rows)
