"""
Exception hierarchy for padicwalk.

Every error raised deliberately by the library derives from PadicWalkError,
so the CLI can map failures to exit codes in one place.
"""

from typing import Any


class PadicWalkError(Exception):
    """Root of all padicwalk errors."""


class ConfigError(PadicWalkError, ValueError):
    """Invalid or inconsistent run configuration."""


class BaseMismatchError(PadicWalkError, ValueError):
    """Two p-adic values or balls built over different bases."""


class OutsideRootBallError(PadicWalkError, ValueError):
    """A point does not lie in the root ball of the window."""


class BallBoundaryError(PadicWalkError, ValueError):
    """Parent of the root or children of a leaf were requested."""


class BranchOverflowError(PadicWalkError, ValueError):
    """A dendrogram node has more children than the base allows."""

    def __init__(self, node: Any, count: int, p: int):
        self.node = node
        self.count = count
        self.p = p
        super().__init__(
            f"Dendrogram node {node} has {count} children but base p={p} "
            f"allows at most {p}; choose a larger base"
        )


class WindowTooShallowError(PadicWalkError, ValueError):
    """The window cannot hold every level an embedding needs."""


class MonotonicityViolationError(PadicWalkError, ValueError):
    """A rate table increases between consecutive levels."""

    def __init__(self, level: int, lower: float, upper: float):
        self.level = level
        super().__init__(
            f"W(p^{level})={lower!r} < W(p^{level + 1})={upper!r}; "
            f"rate profiles must be non-increasing"
        )


class UnsupportedTailError(PadicWalkError, ValueError):
    """A rate profile declares a tail convention we do not evaluate."""


class ZeroMeasureBallError(PadicWalkError, ValueError):
    """An operation needs a ball of positive measure."""


class NegativePotentialError(PadicWalkError, ValueError):
    """A potential U takes a negative value."""


class ScaleGuardError(PadicWalkError):
    """A dense oracle was requested on too many leaves."""


class NonFiniteGeneratorError(PadicWalkError, ArithmeticError):
    """A generator matrix contains NaN or infinite entries."""
