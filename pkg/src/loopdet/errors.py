"""Exception types shared across the package."""


class RingMismatchError(ValueError):
    """Operands live over different coefficient rings (or ranks)."""


class NotAUnitError(ArithmeticError):
    """An operation that needs an invertible argument got a non-unit."""


class NotNilpotentError(ArithmeticError):
    pass


class PrecisionError(ArithmeticError):
    """The precision horizon of an input is too low for the requested result."""


class ParseError(ValueError):
    def __init__(self, message, text="", pos=None):
        self.text = text
        self.pos = pos
        if pos is not None:
            message = f"{message} at position {pos}"
        super().__init__(message)
