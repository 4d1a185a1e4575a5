"""Lossless 8-bit grayscale I/O (binary PGM and PNG) and synthetic covers."""
import enum
import os
import re

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import CorruptFileError, FormatError, RangeError
from .prng import splitmix64_array
from .validation import check_gray_image

_PGM_TOKEN = re.compile(rb"(?:\s|#[^\n\r]*[\n\r])*([^\s#]+)")


def _parse_pgm(data, path):
    pos = 0
    fields = []
    for _ in range(4):
        m = _PGM_TOKEN.match(data, pos)
        if not m:
            raise CorruptFileError(f"{path}: truncated PGM header")
        fields.append(m.group(1))
        pos = m.end()
    magic, *dims = fields
    if magic != b"P5":
        raise FormatError(f"{path}: only binary PGM (P5) is supported, got {magic!r}")
    try:
        width, height, maxval = (int(f) for f in dims)
    except ValueError:
        raise CorruptFileError(f"{path}: non-numeric PGM header field") from None
    if maxval != 255:
        raise FormatError(f"{path}: maxval must be 255, got {maxval}")
    if width <= 0 or height <= 0:
        raise CorruptFileError(f"{path}: bad dimensions {width}x{height}")
    # exactly one whitespace byte separates the header from the raster
    if pos >= len(data) or not data[pos:pos + 1].isspace():
        raise CorruptFileError(f"{path}: missing raster")
    raster = data[pos + 1:]
    need = width * height
    if len(raster) < need:
        raise CorruptFileError(f"{path}: raster has {len(raster)} of {need} bytes")
    return np.frombuffer(raster[:need], dtype=np.uint8).reshape(height, width).copy()


def _load_png(path):
    try:
        with Image.open(path) as im:
            if im.format != "PNG":
                raise FormatError(f"{path}: unsupported format {im.format}")
            if im.mode != "L":
                raise FormatError(
                    f"{path}: PNG must be 8-bit single-channel grayscale, got mode {im.mode}"
                )
            im.load()
            return np.array(im, dtype=np.uint8)
    except UnidentifiedImageError:
        raise FormatError(f"{path}: not a recognised image") from None
    except (OSError, SyntaxError) as exc:
        raise CorruptFileError(f"{path}: {exc}") from None


def load_image(path):
    """Read a P5 PGM (maxval 255) or an 8-bit grayscale PNG as a uint8 array."""
    path = os.fspath(path)
    with open(path, "rb") as fh:
        head = fh.read(8)
        if head[:1] == b"P":
            data = head + fh.read()
            return _parse_pgm(data, path)
    return _load_png(path)


def save_image(img, path):
    """Write ``img`` as binary PGM (.pgm, .pnm) or PNG (.png), chosen by extension."""
    img = check_gray_image(img)
    path = os.fspath(path)
    ext = os.path.splitext(path)[1].lower()
    if ext not in (".pgm", ".pnm", ".png"):
        raise FormatError(f"{path}: output must end in .pgm, .pnm or .png")
    try:
        if ext == ".png":
            Image.fromarray(np.ascontiguousarray(img)).save(path, format="PNG")
        else:
            h, w = img.shape
            with open(path, "wb") as fh:
                fh.write(b"P5\n%d %d\n255\n" % (w, h))
                fh.write(np.ascontiguousarray(img).tobytes())
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write image: {exc.strerror}", path) from exc


class SynthKind(enum.Enum):
    ZERO = "zero"
    GRADIENT = "gradient"
    UNIFORM = "uniform"


def synth_image(kind, width, height, seed=0):
    """Deterministic synthetic cover.

    ``zero`` is all black, ``gradient`` ramps 0..255 left to right
    (``x * 256 // width``), ``uniform`` takes each pixel as a SplitMix64(seed)
    output mod 256 in row-major order.
    """
    kind = SynthKind(kind.value if isinstance(kind, SynthKind) else str(kind).lower())
    if width < 1 or height < 1:
        raise RangeError(f"dimensions must be positive, got {width}x{height}")
    if kind is SynthKind.ZERO:
        return np.zeros((height, width), dtype=np.uint8)
    if kind is SynthKind.GRADIENT:
        row = (np.arange(width) * 256 // width).astype(np.uint8)
        return np.tile(row, (height, 1))
    out = splitmix64_array(seed, width * height) & np.uint64(0xFF)
    return out.astype(np.uint8).reshape(height, width)
