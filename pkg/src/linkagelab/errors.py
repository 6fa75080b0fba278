"""Exception types shared across the engine."""


class EngineError(Exception):
    """Base class for all engine failures."""


class StructuralError(EngineError):
    """Incompatible operands: mixed rings, wrong ranks, bad orders."""


class DomainError(EngineError):
    """Operation undefined for the given mathematical input."""


class ResourceError(EngineError):
    """A configured resource cap (degree, size) was exceeded."""


class SessionError(EngineError):
    """Session text failed to parse or validate."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self):
        if self.line is not None:
            return f"line {self.line}: {self.message}"
        return self.message
