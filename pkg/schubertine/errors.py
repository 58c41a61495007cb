"""Exception hierarchy shared by every schubertine module."""


class SchubertineError(Exception):
    """Base class for all errors raised by schubertine."""


class PreconditionError(SchubertineError, ValueError):
    """A mathematical precondition of an operation does not hold for its input."""

    def __init__(self, precondition: str, message: str):
        super().__init__(message)
        self.precondition = precondition
        self.message = message

    def as_dict(self) -> dict:
        return {"precondition": self.precondition, "message": self.message}


class InternalError(SchubertineError, RuntimeError):
    """A result the theory guarantees failed to materialize (e.g. inexact division)."""
