"""scikit-learn compatible front ends for the codec and the embedder."""
import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .errors import RangeError
from .numsys import check_plane, get_codec, get_system
from .stego import EmbedParams, capacity, embed_message, extract_message
from .validation import check_gray_image


def _check_values(X):
    arr = np.asarray(X)
    if not np.issubdtype(arr.dtype, np.integer):
        raise RangeError(f"expected integer pixel values, got dtype {arr.dtype}")
    if arr.size and (arr.min() < 0 or arr.max() > 255):
        raise RangeError("pixel values must lie in [0, 255]")
    return arr.astype(np.uint8, copy=False)


class BitPlaneDecomposer(TransformerMixin, BaseEstimator):
    """Split pixel values into canonical bit-planes of a number system.

    ``transform`` maps an integer array of shape ``S`` to a uint8 array of
    shape ``S + (n_planes,)`` where ``[..., p-1]`` is plane ``p``.
    ``inverse_transform`` recomposes any bit array, canonical or not.

    Parameters
    ----------
    system : str or System, default="new"
    """

    def __init__(self, system="new"):
        self.system = system

    def fit(self, X=None, y=None):
        system = get_system(self.system)
        self.system_ = system
        self.weights_ = np.array(system.weights)
        self.n_planes_ = system.plane_count
        return self

    def transform(self, X):
        check_is_fitted(self, "system_")
        return get_codec(self.system_).canonical_bits[_check_values(X)]

    def inverse_transform(self, X):
        check_is_fitted(self, "system_")
        bits = np.asarray(X)
        if bits.shape[-1] != self.n_planes_:
            raise RangeError(f"last axis must have {self.n_planes_} planes, got {bits.shape[-1]}")
        return (bits.astype(np.int64) * self.weights_).sum(axis=-1)

    def embeddable_mask(self, X, plane):
        """Boolean mask of pixels that can carry a bit at ``plane``."""
        check_is_fitted(self, "system_")
        plane = check_plane(plane, self.system_)
        return get_codec(self.system_).embeddable[_check_values(X), plane - 1]


class PlaneStego(BaseEstimator):
    """Keyed single-plane embedder.

    ``fit`` measures the cover's capacity; ``embed`` and ``extract`` run the
    keyed embedding and blind extraction with the estimator's parameters.

    Parameters
    ----------
    system : str or System, default="new"
    plane : int, default=1
        1-based plane index, 1 being the least significant.
    key : int, default=0
        64-bit seed of the pixel permutation.
    framing : {"length", "raw"}, default="length"
    """

    def __init__(self, system="new", plane=1, key=0, framing="length"):
        self.system = system
        self.plane = plane
        self.key = key
        self.framing = framing

    def _params(self):
        return EmbedParams(self.system, self.plane, self.key, self.framing)

    def fit(self, X, y=None):
        params = self._params()
        img = check_gray_image(X, "cover")
        self.capacity_ = capacity(img, params.plane, params.system)
        self.n_pixels_ = img.size
        return self

    def embed(self, X, message):
        outcome = embed_message(X, message, self._params())
        self.outcome_ = outcome
        return outcome.stego

    def extract(self, X, raw_length=None):
        return extract_message(X, self._params(), raw_length)
