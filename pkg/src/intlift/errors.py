"""Exception hierarchy.

Every error carries a machine-readable ``code`` which the CLI reports
verbatim.
"""


class IntliftError(Exception):
    code = "Error"


class MalformedInput(IntliftError, ValueError):
    code = "MalformedInput"


class ParseError(IntliftError, ValueError):
    code = "ParseError"


class SchemaError(IntliftError, ValueError):
    code = "SchemaError"


class ShapeMismatch(IntliftError, ValueError):
    code = "ShapeMismatch"


class NotSaturated(IntliftError, ValueError):
    code = "NotSaturated"


class DegreeOutOfRange(IntliftError, ValueError):
    code = "DegreeOutOfRange"


class DegreeMismatch(IntliftError, ValueError):
    code = "DegreeMismatch"


class NotClosed(IntliftError, ValueError):
    code = "NotClosed"


class NotSimplyConnected(IntliftError):
    code = "NotSimplyConnected"


class TrivialClass(IntliftError, ValueError):
    code = "TrivialClass"


class AssumptionsFailed(IntliftError):
    code = "AssumptionsFailed"


class CoefficientActionUndefined(IntliftError):
    code = "CoefficientActionUndefined"


class NonLinearProduct(IntliftError, ArithmeticError):
    """Raised when two non-rational elements of K are multiplied."""

    code = "NonLinearProduct"


class VerificationFailed(IntliftError):
    code = "VerificationFailed"


class InputUnavailable(IntliftError, OSError):
    code = "InputUnavailable"
