"""Exception types shared across the package."""


class InvalidArgumentError(ValueError):
    pass


class SingularityError(ArithmeticError):
    """A matrix that must be inverted is (numerically) singular at ``omega``."""

    def __init__(self, message, omega=None):
        super().__init__(message)
        self.omega = omega


class NumericOverflowError(OverflowError):
    """Simulation state left the finite range; ``step`` is the first bad step."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class DataFormatError(ValueError):
    def __init__(self, message, line=None, field=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.line = line
        self.field = field


class UndefinedRatioError(ZeroDivisionError):
    pass
