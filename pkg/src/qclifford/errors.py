"""Exception types, grouped by how the CLI maps them to exit codes."""


class InputError(ValueError):
    """Bad user-supplied data: shapes, indices, parse failures, mismatched
    contexts, precondition violations on arguments. CLI exit code 2."""


class ShapeError(InputError):
    pass


class ContextMismatch(InputError):
    pass


class DimensionLimitError(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class ComputationError(RuntimeError):
    """An operation is unavailable or failed for the given algebra.
    CLI exit code 1."""


class DegenerateFormError(ComputationError):
    """The symmetric part is degenerate: no Wick bivector exists."""
