"""
Hierarchical measure m(x) d_p x over a resolution window.

Densities are constant on leaves and stored as exact Fractions. Leaves are
kept in canonical (lexicographic digit path) order, so every ball of the
window is a contiguous block of leaves and level aggregation is a numpy
reshape.
"""

from fractions import Fraction
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Union
import logging

import numpy as np

from ..exceptions import OutsideRootBallError, ZeroMeasureBallError
from ..padic import (
    BallAddress,
    Base,
    PAdicApprox,
    Window,
    ancestor,
    ball_from_path,
    ball_of,
    format_path,
    in_root_ball,
)

logger = logging.getLogger(__name__)

BallOrPoint = Union[BallAddress, PAdicApprox]


class MeasureTree:
    """Measure with leaf-constant density m and cached ball measures V."""

    def __init__(
        self,
        base: Base,
        window: Window,
        leaf_density: Optional[Mapping[BallAddress, Fraction]] = None,
    ):
        self.base = base
        self.window = window
        self.leaf_volume = window.leaf_volume(base)

        densities = [Fraction(0)] * window.leaf_count(base)
        for leaf, value in (leaf_density or {}).items():
            value = Fraction(value)
            if value < 0:
                raise ValueError(f"Negative density {value} at {leaf}")
            densities[self.leaf_index(leaf)] = value
        self._densities = densities
        self._build_levels()

    @classmethod
    def from_dense(cls, base: Base, window: Window, densities: Sequence) -> "MeasureTree":
        """Build from densities listed in canonical leaf order."""
        tree = cls(base, window)
        if len(densities) != len(tree._densities):
            raise ValueError(
                f"Expected {len(tree._densities)} leaf densities, got {len(densities)}"
            )
        values = [Fraction(v) for v in densities]
        if any(v < 0 for v in values):
            raise ValueError("Leaf densities must be nonnegative")
        tree._densities = values
        tree._build_levels()
        return tree

    def _build_levels(self) -> None:
        # node_measure per level, canonical order; leaf level first
        p = self.base.p
        current = [d * self.leaf_volume for d in self._densities]
        self._levels: Dict[int, List[Fraction]] = {self.window.gamma_min: current}
        for level in range(self.window.gamma_min + 1, self.window.gamma_max + 1):
            current = [sum(current[i:i + p], Fraction(0)) for i in range(0, len(current), p)]
            self._levels[level] = current
        self.masses = np.array([float(m) for m in self._levels[self.window.gamma_min]])
        self.masses.setflags(write=False)

    # -- addressing -------------------------------------------------------

    @property
    def leaf_count(self) -> int:
        return len(self._densities)

    def ball_index(self, ball: BallAddress) -> int:
        """Position of a ball among the balls of its level."""
        self._check_ball(ball)
        index = 0
        for d in ball.path:
            index = index * self.base.p + d
        return index

    def leaf_index(self, leaf: BallAddress) -> int:
        if leaf.level != self.window.gamma_min:
            raise ValueError(f"{leaf} is not a leaf of the window")
        return self.ball_index(leaf)

    def block_size(self, level: int) -> int:
        """Number of leaves in a ball of radius p^level."""
        return self.base.p ** (level - self.window.gamma_min)

    def ball_slice(self, ball: BallAddress) -> slice:
        size = self.block_size(ball.level)
        start = self.ball_index(ball) * size
        return slice(start, start + size)

    def leaves(self) -> List[BallAddress]:
        """All leaves in canonical order."""
        return self.nodes(self.window.gamma_min)

    def nodes(self, level: int) -> List[BallAddress]:
        depth = self.window.gamma_max - level
        return [
            BallAddress(self.base, level, path)
            for path in product(range(self.base.p), repeat=depth)
        ]

    def leaf_paths(self) -> List[str]:
        return [format_path(self.base, leaf.path) for leaf in self.leaves()]

    def _check_ball(self, ball: BallAddress) -> None:
        if ball.base != self.base or ball.root_level != self.window.gamma_max:
            raise ValueError(f"{ball} does not belong to this window")
        if ball.level < self.window.gamma_min:
            raise ValueError(f"{ball} is below leaf resolution")

    # -- measure queries --------------------------------------------------

    def density(self, leaf: BallAddress) -> Fraction:
        return self._densities[self.leaf_index(leaf)]

    @property
    def densities(self) -> List[Fraction]:
        return list(self._densities)

    def node_measure(self, ball: BallAddress) -> Fraction:
        return self._levels[ball.level][self.ball_index(ball)]

    def level_measures(self, level: int) -> List[Fraction]:
        return list(self._levels[level])

    @property
    def exact_masses(self) -> List[Fraction]:
        """Leaf measures density * p^gamma_min."""
        return list(self._levels[self.window.gamma_min])

    def total_measure(self) -> Fraction:
        return self._levels[self.window.gamma_max][0]

    def support_leaves(self) -> List[BallAddress]:
        return [leaf for leaf, d in zip(self.leaves(), self._densities) if d > 0]

    @property
    def support_mask(self) -> np.ndarray:
        return np.array([d > 0 for d in self._densities], dtype=bool)

    def v_ball(self, x: BallOrPoint, i: int) -> Fraction:
        """
        V_i(x): measure of the ball of radius p^i containing x.

        Above the root the compact-support convention applies and the total
        measure is returned.
        """
        if i < self.window.gamma_min:
            raise ValueError(
                f"Level {i} is below leaf resolution p^{self.window.gamma_min}"
            )
        if isinstance(x, PAdicApprox):
            if not in_root_ball(x, self.window):
                raise OutsideRootBallError(f"{x} lies outside the root ball")
            if i >= self.window.gamma_max:
                return self.total_measure()
            return self.node_measure(ball_of(x, i, self.window))

        self._check_ball(x)
        if i >= self.window.gamma_max:
            return self.total_measure()
        return self.node_measure(ancestor(x, i))

    def require_positive(self, ball: BallAddress) -> Fraction:
        measure = self.node_measure(ball)
        if measure <= 0:
            raise ZeroMeasureBallError(f"{ball} has zero measure")
        return measure

    def nonempty_children(self, ball: BallAddress) -> List[int]:
        """Digits of the sub-balls of positive measure."""
        level = self._levels[ball.level - 1]
        first = self.ball_index(ball) * self.base.p
        return [a for a in range(self.base.p) if level[first + a] > 0]

    # -- numpy aggregation ------------------------------------------------

    def level_sums(self, values: np.ndarray, level: int) -> np.ndarray:
        """Sum leaf values over each ball of the given level."""
        return np.asarray(values).reshape(-1, self.block_size(level)).sum(axis=1)

    def expand_level(self, per_ball: np.ndarray, level: int) -> np.ndarray:
        """Broadcast one value per ball back onto the leaves."""
        return np.repeat(np.asarray(per_ball), self.block_size(level))

    # -- derived trees ----------------------------------------------------

    def with_densities(self, densities: Sequence) -> "MeasureTree":
        return MeasureTree.from_dense(self.base, self.window, densities)

    def scaled(self, factor) -> "MeasureTree":
        factor = Fraction(factor)
        return self.with_densities([d * factor for d in self._densities])

    # -- leaf-table schema ------------------------------------------------

    @classmethod
    def from_leaf_table(
        cls, p: int, gamma_min: int, gamma_max: int, leaves: Mapping[str, object]
    ) -> "MeasureTree":
        """
        Build from the JSON leaf table. Omitted leaves have density 0; a
        path shorter than the window depth sets every leaf of that ball,
        with deeper entries taking precedence.
        """
        base = Base(p)
        window = Window(gamma_min, gamma_max)
        tree = cls(base, window)
        densities = [Fraction(0)] * tree.leaf_count
        for text, value in sorted(leaves.items(), key=lambda kv: len(kv[0].strip())):
            ball = ball_from_path(base, window, text)
            densities[tree.ball_slice(ball)] = [Fraction(str(value))] * tree.block_size(ball.level)
        return cls.from_dense(base, window, densities)

    def to_leaf_table(self) -> Dict[str, object]:
        return {
            "p": self.base.p,
            "gamma_min": self.window.gamma_min,
            "gamma_max": self.window.gamma_max,
            "leaves": {
                format_path(self.base, leaf.path): str(d)
                for leaf, d in zip(self.leaves(), self._densities) if d > 0
            },
        }

    def __repr__(self) -> str:
        return (
            f"MeasureTree(p={self.base.p}, window=[{self.window.gamma_min}, "
            f"{self.window.gamma_max}], support={len(self.support_leaves())}/"
            f"{self.leaf_count}, total={self.total_measure()})"
        )
