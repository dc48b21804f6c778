"""Exception hierarchy.

Everything derived from :class:`MathError` signals a mathematical failure
(non-Artinian input, degenerate pairing, violated hypothesis, ...); the CLI
maps those to exit status 2. :class:`SpecParseError` covers malformed input
text and maps to exit status 1.
"""


class MathError(Exception):
    """Base class for mathematical errors."""


class GroupMismatchError(MathError, ValueError):
    pass


class RingMismatchError(MathError, ValueError):
    pass


class UnsupportedGradingError(MathError):
    """The grading has no positivity certificate, so graded pieces may be infinite."""


class NotHomogeneousError(MathError, ValueError):
    pass


class NotArtinianError(MathError):
    pass


class NotMaximalError(MathError):
    pass


class DegeneratePairingError(MathError):
    pass


class HypothesisError(MathError):
    """An input violates a hypothesis that the requested check relies on."""


class DegenerateGradingError(MathError):
    pass


class EmptyPolyhedronError(MathError):
    pass


class NoRepresentativeError(MathError):
    pass


class SpecParseError(ValueError):
    """Malformed polynomial, degree or spec-file text.

    ``location`` names where the problem is (a JSON path, a column, ...).
    """

    def __init__(self, message, location=None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)
