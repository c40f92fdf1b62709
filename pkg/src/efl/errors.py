class EFLError(Exception):
    """Base class for every error raised by the package."""


class ModelError(EFLError, ValueError):
    """Structurally malformed model input (unknown ids, bad pairs)."""


class ParseError(EFLError):
    def __init__(self, message, line=1, column=1, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        detail = f"{message} at line {line}, column {column}"
        if self.expected:
            detail += " (expected one of: " + ", ".join(self.expected) + ")"
        super().__init__(detail)


class EvaluationError(EFLError):
    pass


class UnknownNominal(EvaluationError):
    pass


class NotNamedAgent(EvaluationError):
    pass


class UnboundInternal(EvaluationError):
    pass


class MissingWantRelation(EvaluationError):
    pass


class EFLViolation(EvaluationError):
    """A transformation produced a structure that is not an EFL model."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class CrossDimensionError(EFLViolation):
    pass
