"""Exception types shared by the library and the command line front-end."""


class CTError(Exception):
    """Base class for every error raised by :mod:`ctgroups`."""


class SpecError(CTError, ValueError):
    """Malformed input: bad diagram, unknown vertex, unparseable file."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class PreconditionError(CTError):
    """A hypothesis of the requested computation does not hold."""
