"""Exception types raised across qagentlab."""


class QAgentError(Exception):
    """Base class for all qagentlab errors."""


class InvalidGateError(QAgentError, ValueError):
    pass


class EmptyMeasurementError(QAgentError, ValueError):
    pass


class SizeLimitError(QAgentError, ValueError):
    pass


class OptimizerError(QAgentError, ArithmeticError):
    pass


class UnknownArmError(QAgentError, KeyError):
    pass


class ImageError(QAgentError, ValueError):
    """Empty image, bad PGM data, or an out-of-range entropy feature."""


class LogParseError(QAgentError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
