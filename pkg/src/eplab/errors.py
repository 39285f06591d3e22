"""Exception types shared across the toolkit."""


class EplabError(Exception):
    """Base class for all toolkit errors."""


class InputError(EplabError, ValueError):
    """Invalid input: non-finite entries, bad shapes, invalid parameters."""


class DimensionMismatchError(InputError):
    """Operands whose dimensions are required to agree do not."""


class TrivialSubspaceError(InputError):
    """An angle was requested between subspaces where one is the zero space."""


class InapplicableError(EplabError):
    """A decision procedure was invoked outside its stated hypotheses."""


class CmatParseError(InputError):
    """Malformed matrix file; carries the offending line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
