"""Exception hierarchy shared by every module."""


class WickChaosError(Exception):
    """Base class for all package-specific errors."""


class OrderOverflowError(WickChaosError):
    """A chaos order exceeded the configured truncation cap."""


class DimensionMismatchError(WickChaosError):
    """Operands live over Gaussian spaces of different dimension."""


class DivergenceError(WickChaosError):
    """A renormalization series fails its convergence condition."""


class DomainError(WickChaosError):
    """An input leaves the mathematical domain of a closed form."""


class MismatchError(WickChaosError):
    """A zero-variance estimate disagrees with the exact value."""


class ParseError(WickChaosError):
    """Syntax error in DSL source, carrying line and column."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class SchemaError(WickChaosError):
    """Malformed JSON for a serialized value, carrying the offending path."""

    def __init__(self, message: str, path: str):
        super().__init__(f"{path}: {message}")
        self.path = path
