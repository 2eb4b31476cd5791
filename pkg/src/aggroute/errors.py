"""Exception hierarchy shared by every module of the package."""


class AggrouteError(Exception):
    """Base class for all package errors."""


class ParseError(AggrouteError):
    """A text document could not be parsed.

    ``lineno`` is 1-based and may be ``None`` when the error is not tied to
    a particular line.
    """

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class ValidationError(AggrouteError):
    """Input is well formed but violates a structural rule."""


class ParameterError(AggrouteError, ValueError):
    """A numeric or configuration parameter is out of range."""


class CapacityError(AggrouteError):
    """Instance is too large for an exhaustive procedure."""


class ContractError(AggrouteError, ValueError):
    """A function was called with arguments violating its precondition."""


class AssignmentError(AggrouteError):
    """A variable assignment does not cover the model it is checked against."""


class EncodingError(AggrouteError):
    """A plan cannot be expressed as an assignment of model variables."""


class VerificationError(AggrouteError):
    """A result failed an independent consistency check."""
