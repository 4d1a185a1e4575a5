"""Input checks shared by the estimators, the codec and the CLI."""
import numpy as np

from .errors import RangeError, StructuralError

MAX_KEY = (1 << 64) - 1


def check_key(key):
    """Return ``key`` as an int in [0, 2**64). Strings may be decimal or 0x-hex."""
    if isinstance(key, str):
        text = key.strip().lower()
        try:
            key = int(text, 16) if text.startswith("0x") else int(text, 10)
        except ValueError:
            raise RangeError(f"key must be decimal or 0x-hex, got {key!r}") from None
    if isinstance(key, (bool, float)) or not isinstance(key, (int, np.integer)):
        raise RangeError(f"key must be an integer, got {type(key).__name__}")
    key = int(key)
    if not 0 <= key <= MAX_KEY:
        raise RangeError(f"key must fit in 64 unsigned bits, got {key}")
    return key


def check_gray_image(img, name="image"):
    """Validate a 2-D grayscale image and return it as a uint8 array.

    Accepts any integer array-like with values in [0, 255]; never rescales.
    """
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise StructuralError(f"{name} must be 2-D (height, width), got shape {arr.shape}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise RangeError(f"{name} has a zero dimension: {arr.shape}")
    if arr.dtype == np.uint8:
        return arr
    if not np.issubdtype(arr.dtype, np.integer):
        if np.issubdtype(arr.dtype, np.floating) and np.all(np.mod(arr, 1) == 0):
            arr = arr.astype(np.int64)
        else:
            raise RangeError(f"{name} must hold integer intensities, got dtype {arr.dtype}")
    if arr.min() < 0 or arr.max() > 255:
        raise RangeError(f"{name} intensities must lie in [0, 255]")
    return arr.astype(np.uint8)


def check_same_shape(a, b):
    if a.shape != b.shape:
        raise StructuralError(f"image shapes differ: {a.shape} vs {b.shape}")


def check_bits(bits, name="message"):
    """Return a 1-D uint8 array of 0/1 values."""
    arr = np.asarray(bits)
    if arr.ndim != 1:
        arr = arr.reshape(-1)
    if arr.size and (arr.min() < 0 or arr.max() > 1):
        raise RangeError(f"{name} must contain only 0/1 bits")
    return arr.astype(np.uint8)


def check_value(value):
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise RangeError(f"pixel value must be an integer, got {value!r}")
    if not 0 <= value <= 255:
        raise RangeError(f"pixel value must lie in [0, 255], got {value}")
    return int(value)
