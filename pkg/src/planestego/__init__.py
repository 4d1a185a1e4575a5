"""Bit-plane steganography over binary and non-binary positional number systems."""
from .errors import (CapacityError, CorruptFileError, FormatError, FramingError, RangeError,
                     StegoError, StructuralError, TruncationError)
from .estimators import BitPlaneDecomposer, PlaneStego
from .numsys import (CodeWord, System, all_representations, build_table, canonicalize,
                     embeddable, get_system, is_canonical, recompose, weights)
from .stego import (EmbedOutcome, EmbedParams, Framing, capacity, embed_bit, embed_message,
                    extract_message)

__version__ = "0.1.0"
