"""Exception types shared across the library."""


class DtlabError(Exception):
    """Base class for all library errors."""


class DomainError(DtlabError):
    """Evaluation or composition outside a function's domain."""


class NotInvertibleError(DtlabError):
    """Functional inverse requested for a function that has no inverse."""


class ClassError(DtlabError):
    """A function does not belong to the class an operation requires."""


class NormalFormError(DtlabError):
    """A transform word cannot be collapsed to distortion-then-pushforward."""


class SpecError(DtlabError):
    """Invalid distribution specification (weights, endpoints)."""


class LevelError(DtlabError):
    """Quantile or risk level outside its admissible range."""


class ExtractionError(DtlabError):
    """Black-box probing returned data no generator could produce."""


class UnknownExample(DtlabError):
    """Unrecognised built-in reproduction id."""


class ParseError(DtlabError):
    """Syntax or validation error in a declaration file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
