"""Exception hierarchy shared by every module in the package."""

from __future__ import annotations


class DesignError(ValueError):
    """Base class for invalid inputs and refused requests."""


class NotPrime(DesignError):
    pass


class BadShape(DesignError):
    pass


class RankDeficient(DesignError):
    def __init__(self, rank: int, required: int):
        super().__init__(f"generator matrix has rank {rank}, needs full row rank {required}")
        self.rank = rank
        self.required = required


class InvalidPoint(DesignError):
    """Zero vector where a projective point was expected."""

    def __init__(self, message: str = "zero vector is not a projective point", column: int | None = None):
        if column is not None:
            message = f"{message} (column {column})"
        super().__init__(message)
        self.column = column


class CellCapExceeded(DesignError):
    def __init__(self, cells: int, cap: int):
        super().__init__(f"design has {cells} cells, above the cap of {cap}")
        self.cells = cells
        self.cap = cap


class Inadmissible(DesignError):
    pass


class UnsupportedParameters(DesignError):
    pass


class WrongProposition(DesignError):
    pass


class MainEffectConfounded(DesignError):
    pass


class BalanceInfeasible(DesignError):
    def __init__(self, message: str, histogram: dict | None = None):
        super().__init__(message)
        self.histogram = histogram


class SearchSpaceTooLarge(DesignError):
    pass


class AGMParseError(DesignError):
    def __init__(self, message: str, line: int, column: int | None = None):
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column
