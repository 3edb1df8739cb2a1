"""Exception types shared across the package."""

from __future__ import annotations


class ArcError(Exception):
    """Base class for all errors raised by this package."""


class OverlapError(ArcError):
    """Two input intervals intersect as open sets."""

    def __init__(self, i: int, j: int):
        self.i, self.j = i, j
        super().__init__(f"intervals at input positions {i} and {j} overlap")


class EndpointMismatchError(ArcError):
    """Concatenation requires the first path to end where the second starts."""


class NotALoopError(ArcError):
    """An interval (a, b) fails the loop condition: the path differs at a and b."""

    def __init__(self, index: int, a=None, b=None):
        self.index = index
        self.a, self.b = a, b
        where = f" ({a}, {b})" if a is not None else ""
        super().__init__(f"interval {index}{where} is not a loop of the path")


class NotAChainError(ArcError):
    """Two chain members are incomparable, or the chain is not sorted ascending."""

    def __init__(self, i: int, j: int, reason: str = "incomparable"):
        self.i, self.j = i, j
        super().__init__(f"chain members {i} and {j} are {reason}")


class PremiseFailedError(ArcError):
    """A nested pair violates the ordering or the pairwise equality premise."""

    def __init__(self, index: int, reason: str):
        self.index = index
        super().__init__(f"pair {index}: {reason}")


class NotCollapsibleError(ArcError):
    """The cancellation is {(0,1)} or has intervals with touching closures."""


class IsLoopError(ArcError):
    """Operation requires a non-loop path but the endpoints coincide."""


class FingerprintMismatchError(ArcError):
    """A cancellation validated against one path was applied to another."""


class ReductionVerificationError(ArcError):
    """Internal guard: the reduction identity failed an exact recheck."""


class DocumentError(ArcError):
    """A wire document failed to parse; carries the offending position."""

    def __init__(self, where: str, message: str):
        self.where = where
        super().__init__(f"{where}: {message}")
