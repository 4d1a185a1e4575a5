"""Exception hierarchy. Every error raised by the package derives from StegoError."""


class StegoError(Exception):
    pass


class RangeError(StegoError, ValueError):
    """A value, plane index or size falls outside its allowed range."""


class StructuralError(StegoError, ValueError):
    """Mismatched lengths or dimensions between arguments."""


class CapacityError(StegoError):
    def __init__(self, required, available):
        self.required = required
        self.available = available
        super().__init__(
            f"message needs {required} bits but cover holds {available} "
            f"(short by {required - available})"
        )


class FramingError(StegoError):
    """Length header claims more bits than the stego image can yield."""


class TruncationError(StegoError):
    """Requested raw length exceeds what the stego image can yield."""


class FormatError(StegoError, ValueError):
    """Unsupported image format, depth or channel layout."""


class CorruptFileError(StegoError, ValueError):
    """Image file is truncated or its header is malformed."""
