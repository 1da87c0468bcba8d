"""Exception hierarchy.

Everything raised for bad input derives from :class:`InvalidInput` so the CLI
can map it to exit code 2; resource guards derive from :class:`CapExceeded`
(exit code 3).
"""

from __future__ import annotations


class WeakIsoError(Exception):
    """Base class for all package errors."""


class InvalidInput(WeakIsoError, ValueError):
    """Input violates a documented precondition."""


class CapExceeded(WeakIsoError):
    """An enumeration or search would exceed its configured size cap."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


# metric validation

class InvalidSpace(InvalidInput):
    """Matrix/labels do not describe a finite metric space."""


class ShapeMismatch(InvalidSpace):
    pass


class AsymmetricMatrix(InvalidSpace):
    def __init__(self, i: int, j: int):
        super().__init__(f"dist[{i}][{j}] != dist[{j}][{i}]")
        self.witness = (i, j)


class NonzeroDiagonal(InvalidSpace):
    def __init__(self, i: int):
        super().__init__(f"dist[{i}][{i}] != 0")
        self.witness = (i,)


class NegativeDistance(InvalidSpace):
    def __init__(self, i: int, j: int):
        super().__init__(f"dist[{i}][{j}] is negative or not finite")
        self.witness = (i, j)


class ZeroOffDiagonal(InvalidSpace):
    def __init__(self, i: int, j: int):
        super().__init__(f"distinct points {i} and {j} at distance 0 (semi-metrics are rejected)")
        self.witness = (i, j)


class TriangleViolation(InvalidSpace):
    def __init__(self, i: int, j: int, k: int, lhs: float, rhs: float):
        super().__init__(f"d({i},{k}) = {lhs!r} > d({i},{j}) + d({j},{k}) = {rhs!r}")
        self.witness = (i, j, k)


class DuplicateLabel(InvalidSpace):
    def __init__(self, label: str):
        super().__init__(f"duplicate label {label!r}")
        self.witness = (label,)


# monotone maps

class UnsortedTable(InvalidInput):
    pass


class DecreasingValues(InvalidInput):
    pass


class CollapseWithoutFlag(InvalidInput):
    """A non-strict rescaling was applied without ``allow_collapse``."""


class NonStrictOnValues(InvalidInput):
    pass


class NotInvertibleOnEndpoints(InvalidInput):
    pass


# curvature sets

class MExceedsN(InvalidInput):
    pass


class BadDimension(InvalidInput):
    pass


class DimensionMismatch(InvalidInput):
    pass


# misc

class IndexOutOfRange(InvalidInput):
    pass


class NotSurjective(InvalidInput):
    pass


class NotPrime(InvalidInput):
    pass


class InfiniteMismatch(UserWarning):
    """Diagrams carry different numbers of infinite bars; distance is +inf."""
