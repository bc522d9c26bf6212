"""Exception types raised across the package."""

from __future__ import annotations

__all__ = [
    "PnmatchError",
    "CapExceeded",
    "NotPerfect",
    "PreconditionViolated",
    "NotABridge",
    "NotUnique",
    "InvalidStructure",
    "EmptyStructure",
    "CyclicStructure",
    "DegreeViolation",
    "TooManyPairs",
    "NotCorrect",
    "Incorrect",
    "NotAPar",
    "NotMaximal",
    "NotMllCorrect",
    "InvalidDerivation",
]


class PnmatchError(Exception):
    """Base class for all errors raised by this package."""


class CapExceeded(PnmatchError):
    """An exhaustive enumeration produced more results than allowed."""

    def __init__(self, cap: int, what: str = "results"):
        super().__init__(f"more than {cap} {what}")
        self.cap = cap


class NotPerfect(PnmatchError, ValueError):
    """The given edge set is not a perfect matching of the graph."""


class PreconditionViolated(PnmatchError, ValueError):
    pass


class NotABridge(PnmatchError, ValueError):
    pass


class NotUnique(PnmatchError):
    """The perfect matching is not unique; ``witness`` is an alternating cycle."""

    def __init__(self, witness):
        super().__init__("perfect matching is not unique")
        self.witness = witness


class InvalidStructure(PnmatchError, ValueError):
    """Base class for proof-structure validation failures."""


class EmptyStructure(InvalidStructure):
    pass


class CyclicStructure(InvalidStructure):
    pass


class DegreeViolation(InvalidStructure):
    def __init__(self, link: int, clause: str, expected: str, actual: int):
        super().__init__(f"link {link}: {clause} expected {expected}, got {actual}")
        self.link = link
        self.clause = clause
        self.expected = expected
        self.actual = actual


class TooManyPairs(PnmatchError):
    pass


class NotCorrect(PnmatchError):
    """The proof structure is not an MLL+Mix proof net."""

    def __init__(self, witness=None, message: str = "proof structure is not correct"):
        super().__init__(message)
        self.witness = witness


class Incorrect(NotCorrect):
    """Raised by sequentialization; ``witness`` is a switching cycle."""


class NotAPar(PnmatchError, ValueError):
    pass


class NotMaximal(PnmatchError, ValueError):
    pass


class NotMllCorrect(PnmatchError):
    pass


class InvalidDerivation(PnmatchError, ValueError):
    pass
