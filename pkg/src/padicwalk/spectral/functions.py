"""
Leaf-constant functions on the window.

Values live in a numpy array in canonical leaf order. Float arrays carry the
numerics; object arrays of Fraction give exact arithmetic for identities
that must hold with equality.
"""

from fractions import Fraction
from typing import Mapping, Optional, Union
import logging

import numpy as np

from ..measures import MeasureTree
from ..padic import BallAddress, ball_from_path

logger = logging.getLogger(__name__)

Scalar = Union[int, float, Fraction]


class PiecewiseFunction:
    """A real function constant on every leaf of the tree's window."""

    def __init__(self, tree: MeasureTree, values):
        values = np.asarray(values)
        if values.shape != (tree.leaf_count,):
            raise ValueError(
                f"Expected {tree.leaf_count} leaf values, got shape {values.shape}"
            )
        self.tree = tree
        self.values = values

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, tree: MeasureTree, exact: bool = False) -> "PiecewiseFunction":
        if exact:
            return cls(tree, np.array([Fraction(0)] * tree.leaf_count, dtype=object))
        return cls(tree, np.zeros(tree.leaf_count))

    @classmethod
    def constant(cls, tree: MeasureTree, value: Scalar = 1.0) -> "PiecewiseFunction":
        if isinstance(value, Fraction):
            return cls(tree, np.array([value] * tree.leaf_count, dtype=object))
        return cls(tree, np.full(tree.leaf_count, float(value)))

    @classmethod
    def indicator(cls, tree: MeasureTree, ball: BallAddress, exact: bool = False) -> "PiecewiseFunction":
        """Omega of a ball as a 0/1 function."""
        f = cls.zeros(tree, exact=exact)
        f.values[tree.ball_slice(ball)] = Fraction(1) if exact else 1.0
        return f

    @classmethod
    def from_leaf_table(
        cls, tree: MeasureTree, table: Mapping[str, object], exact: bool = False
    ) -> "PiecewiseFunction":
        """Same schema as measure leaf tables: digit path -> value, deeper paths win."""
        f = cls.zeros(tree, exact=exact)
        for text, value in sorted(table.items(), key=lambda kv: len(kv[0].strip())):
            ball = ball_from_path(tree.base, tree.window, text)
            v = Fraction(str(value)) if exact else float(Fraction(str(value)))
            f.values[tree.ball_slice(ball)] = v
        return f

    # -- arithmetic -------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.values.dtype == object

    def as_float(self) -> "PiecewiseFunction":
        if not self.is_exact:
            return self
        return PiecewiseFunction(self.tree, np.array([float(v) for v in self.values]))

    def _coerce(self, other: "PiecewiseFunction") -> np.ndarray:
        if other.tree is not self.tree and (
            other.tree.base != self.tree.base or other.tree.window != self.tree.window
        ):
            raise ValueError(
                f"Functions live on different windows: {self.tree.base.p}-adic {self.tree.window} "
                f"and {other.tree.base.p}-adic {other.tree.window}"
            )
        return other.values

    def __add__(self, other: "PiecewiseFunction") -> "PiecewiseFunction":
        return PiecewiseFunction(self.tree, self.values + self._coerce(other))

    def __sub__(self, other: "PiecewiseFunction") -> "PiecewiseFunction":
        return PiecewiseFunction(self.tree, self.values - self._coerce(other))

    def __mul__(self, scalar: Scalar) -> "PiecewiseFunction":
        return PiecewiseFunction(self.tree, self.values * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "PiecewiseFunction":
        return PiecewiseFunction(self.tree, -self.values)

    def value_at(self, leaf: BallAddress):
        return self.values[self.tree.leaf_index(leaf)]

    # -- L2(m d_p x) ------------------------------------------------------

    def inner(self, other: "PiecewiseFunction"):
        """Integral of f * g * m over the window; exact when both are exact."""
        self._coerce(other)
        if self.is_exact and other.is_exact:
            masses = self.tree.exact_masses
            return sum((a * b * w for a, b, w in zip(self.values, other.values, masses)), Fraction(0))
        a = self.as_float().values
        b = other.as_float().values
        return float(np.dot(a * b, self.tree.masses))

    def norm(self) -> float:
        return float(np.sqrt(self.as_float().inner(self.as_float())))

    def integral(self):
        """Integral of f * m."""
        if self.is_exact:
            return self.inner(PiecewiseFunction.constant(self.tree, Fraction(1)))
        return float(np.dot(self.values, self.tree.masses))

    def mean(self) -> float:
        return float(self.integral()) / float(self.tree.total_measure())

    def max_abs_diff(self, other: "PiecewiseFunction", mask: Optional[np.ndarray] = None) -> float:
        diff = np.abs(self.as_float().values - other.as_float().values)
        if mask is not None:
            diff = diff[mask]
        return float(diff.max()) if diff.size else 0.0

    def masked(self, mask: np.ndarray) -> "PiecewiseFunction":
        """Copy that keeps values where mask holds and zeroes the rest."""
        values = self.values.copy()
        values[~mask] = Fraction(0) if self.is_exact else 0.0
        return PiecewiseFunction(self.tree, values)

    def is_zero(self) -> bool:
        return bool(all(v == 0 for v in self.values))

    def __repr__(self) -> str:
        kind = "exact" if self.is_exact else "float"
        return f"PiecewiseFunction({kind}, leaves={self.tree.leaf_count})"
