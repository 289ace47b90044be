class InputError(ValueError):
    """Malformed or out-of-range input (CLI exit code 2)."""


class PreconditionError(InputError):
    """An operation was called outside its stated domain."""


class InconsistencyError(Exception):
    """The inputs are well formed but the computation contradicts itself (exit code 1).

    `result` carries whatever was computed before the contradiction surfaced.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
