"""Keyed single-plane embedding and blind extraction.

Pixels are visited in the order given by :func:`~planestego.prng.pixel_permutation`.
A pixel carries a bit only when its value is embeddable at the chosen plane,
a property that survives embedding, so the extractor skips exactly the same
pixels without side information.
"""
import enum
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, FramingError, RangeError, TruncationError
from .numsys import check_plane, get_codec, get_system
from .prng import pixel_permutation
from .validation import check_bits, check_gray_image, check_key, check_value

HEADER_BITS = 32


class Framing(enum.Enum):
    LENGTH_PREFIXED = "length"
    RAW = "raw"


def get_framing(framing):
    if isinstance(framing, Framing):
        return framing
    key = str(framing).strip().lower()
    for f in Framing:
        if key in (f.value, f.name.lower(), f.name.lower().replace("_", "")):
            return f
    raise RangeError(f"unknown framing {framing!r}; expected 'length' or 'raw'")


@dataclass(frozen=True)
class EmbedParams:
    system: object
    plane: int
    key: int
    framing: Framing = Framing.LENGTH_PREFIXED

    def __post_init__(self):
        system = get_system(self.system)
        object.__setattr__(self, "system", system)
        object.__setattr__(self, "plane", check_plane(self.plane, system))
        object.__setattr__(self, "key", check_key(self.key))
        object.__setattr__(self, "framing", get_framing(self.framing))


@dataclass
class EmbedOutcome:
    stego: np.ndarray
    bits_embedded: int
    pixels_visited: int
    pixels_skipped: int


def embed_bit(pixel, secret, params):
    """Embed one bit into one pixel value.

    Returns the new pixel value, or ``None`` when the pixel is not embeddable
    and must be skipped.
    """
    pixel = check_value(pixel)
    if secret not in (0, 1):
        raise RangeError(f"secret bit must be 0 or 1, got {secret!r}")
    codec = get_codec(params.system)
    p = params.plane - 1
    if not codec.embeddable[pixel, p]:
        return None
    return int(codec.set_value[pixel, p, int(secret)])


def capacity(cover, plane, system):
    """Number of pixels of ``cover`` that can carry a bit at ``plane``."""
    codec = get_codec(system)
    plane = check_plane(plane, codec.system)
    img = check_gray_image(cover, "cover")
    return int(np.count_nonzero(codec.embeddable[img.ravel(), plane - 1]))


def length_header(n_bits):
    if not 0 <= n_bits < 1 << HEADER_BITS:
        raise RangeError(f"message of {n_bits} bits does not fit a 32-bit header")
    return np.unpackbits(np.array([n_bits], dtype=">u4").view(np.uint8))


def _eligible_order(flat, params):
    """Flat pixel indices that can carry a bit, in keyed visiting order,
    and the visiting-order position of each."""
    codec = get_codec(params.system)
    perm = pixel_permutation(params.key, flat.size)
    positions = np.flatnonzero(codec.embeddable[flat[perm], params.plane - 1])
    return perm[positions], positions


def embed_message(cover, message, params):
    img = check_gray_image(cover, "cover")
    bits = check_bits(message)
    if params.framing is Framing.LENGTH_PREFIXED:
        bits = np.concatenate([length_header(bits.size), bits])

    flat = img.ravel()
    targets, positions = _eligible_order(flat, params)
    if bits.size > targets.size:
        raise CapacityError(bits.size, targets.size)

    out = flat.copy()
    n = bits.size
    if n:
        idx = targets[:n]
        codec = get_codec(params.system)
        out[idx] = codec.set_value[flat[idx], params.plane - 1, bits]
    visited = int(positions[n - 1]) + 1 if n else 0
    return EmbedOutcome(
        stego=out.reshape(img.shape),
        bits_embedded=n,
        pixels_visited=visited,
        pixels_skipped=visited - n,
    )


def extract_message(stego, params, raw_length=None):
    """Recover the embedded bit stream as a uint8 array of 0/1."""
    img = check_gray_image(stego, "stego")
    flat = img.ravel()
    targets, _ = _eligible_order(flat, params)
    codec = get_codec(params.system)
    available = targets.size

    def read(start, count):
        return codec.canonical_bits[flat[targets[start:start + count]], params.plane - 1]

    if params.framing is Framing.RAW:
        if raw_length is None:
            raise RangeError("raw framing needs an explicit raw_length")
        if raw_length < 0:
            raise RangeError(f"raw_length must be >= 0, got {raw_length}")
        if raw_length > available:
            raise TruncationError(
                f"asked for {raw_length} bits but only {available} are extractable"
            )
        return read(0, raw_length).copy()

    if available < HEADER_BITS:
        raise FramingError(f"only {available} extractable bits, fewer than the 32-bit header")
    length = int.from_bytes(np.packbits(read(0, HEADER_BITS)).tobytes(), "big")
    if HEADER_BITS + length > available:
        raise FramingError(
            f"header claims {length} bits but only {available - HEADER_BITS} remain"
        )
    return read(HEADER_BITS, length).copy()


def bytes_to_bits(data):
    return np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8))


def bits_to_bytes(bits):
    """Pack bits MSB-first; a trailing partial byte is zero-padded."""
    return np.packbits(check_bits(bits)).tobytes()
