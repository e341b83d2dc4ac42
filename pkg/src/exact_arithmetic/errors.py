class GaloisToolkitError(Exception):
    """Base exception for every error raised by the toolkit."""
    pass


class RingTagMismatchError(GaloisToolkitError):
    """Exception raised when elements of different quadratic rings are combined."""
    pass


class NonUnimodularMatrixError(GaloisToolkitError):
    """Exception raised when a unimodular inverse is requested for a matrix with det != ±1."""
    pass
