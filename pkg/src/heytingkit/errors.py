"""Exception hierarchy shared by every module of the workbench."""


class WorkbenchError(Exception):
    """Base class for all errors raised by heytingkit."""


class SizeLimitError(WorkbenchError):
    """A construction would exceed one of the configured size guards."""


class ResourceError(WorkbenchError):
    """A search procedure ran out of its work budget."""


class StructureError(WorkbenchError):
    """A table does not have the algebraic structure it claims to have."""


class ArgumentError(WorkbenchError, ValueError):
    """An operation was called outside its precondition."""


class FIPError(ArgumentError):
    """A generator set lacks the finite intersection property.

    ``witness`` is a subset of the generators whose meet is the bottom.
    """

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class ConsistencyError(WorkbenchError):
    """An internal cross-check failed. Always indicates a bug."""


class ParseError(WorkbenchError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.detail = message
        self.position = position
