"""Exception types shared across the package."""


class ClosenessError(Exception):
    """Base class for all errors raised by this package."""


class GraphFormatError(ClosenessError, ValueError):
    """Malformed edge-list input."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class ParameterError(ClosenessError, ValueError):
    """A numeric parameter lies outside its valid domain."""


class DisconnectedGraphError(ClosenessError):
    """Raised when an operation needs every distance to be finite."""

    def __init__(self, certificate, message=None):
        self.certificate = certificate
        if message is None:
            message = (
                f"graph is not connected: vertex {certificate.witness} "
                "is unreachable from vertex 0"
            )
        super().__init__(message)


class GenerationError(ClosenessError):
    """A random generator could not satisfy its constraints within the retry cap."""
