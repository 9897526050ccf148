class ScaffoldError(Exception):
    pass


# instance construction and solver preconditions


class InstanceError(ScaffoldError, ValueError):
    pass


class InfeasibleInstance(InstanceError):
    pass


class EmptySource(InfeasibleInstance):
    pass


class EmptyTarget(InfeasibleInstance):
    pass


class InfeasibleCardinality(InfeasibleInstance):
    pass


class RangeExceeded(InstanceError):
    pass


class UnsortedInput(InstanceError):
    pass


class CardinalityMismatch(InstanceError):
    pass


class NoRemovalNeeded(InstanceError):
    pass


class MalformedRemovalSet(InstanceError):
    pass


class HeightOutOfRange(InstanceError):
    pass


class InstanceTooLarge(InstanceError):
    pass


# text input


class InputFormatError(ScaffoldError, ValueError):
    pass


class InstanceSyntaxError(InputFormatError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class BadSymbol(InputFormatError):
    def __init__(self, symbol, position):
        super().__init__(f"bad symbol {symbol!r} at position {position}, expected 'x' or '.'")
        self.symbol = symbol
        self.position = position


class GeneratorConfigError(ScaffoldError, ValueError):
    pass


# conditions that only an implementation bug can produce


class InternalError(ScaffoldError, RuntimeError):
    pass


class MissingHeightLevel(InternalError):
    pass


class InvariantViolation(InternalError):
    pass
