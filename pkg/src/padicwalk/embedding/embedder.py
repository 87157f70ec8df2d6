"""
Isometric embedding of a finite ultrametric space into Q_p.

The k-th smallest distance is sent to p^k. Walking the dendrogram from the
root ball B_K(0) down, the points of a ball of radius p^L split into the
classes of "distance rank < L"; classes take digits 0, 1, ... in order of
their first point, so every embedded point is a digit path of length K.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional
import logging

import numpy as np

from ..exceptions import BranchOverflowError, ConfigError, WindowTooShallowError
from ..measures import MeasureTree
from ..padic import BallAddress, Base, PAdicApprox, Window, ball_of, center, distance, format_path
from .space import FiniteUltrametricSpace, validate_ultrametric

logger = logging.getLogger(__name__)


@dataclass
class EmbeddingResult:
    base: Base
    assignment: Dict[str, BallAddress] = field(default_factory=dict)
    level_map: Dict[Fraction, int] = field(default_factory=dict)

    @property
    def depth(self) -> int:
        """Exponent K of the root ball p^K; the largest level in use."""
        return max(self.level_map.values(), default=0)

    @property
    def window(self) -> Window:
        return Window(0, self.depth)

    def points(self) -> Dict[str, PAdicApprox]:
        return {label: center(leaf) for label, leaf in self.assignment.items()}

    def isometry_violations(self, space: FiniteUltrametricSpace) -> List[str]:
        """Pairs whose embedded distance is not p^level_map(delta)."""
        points = self.points()
        problems = []
        for i, u in enumerate(space.labels):
            for j in range(i + 1, space.size):
                v = space.labels[j]
                expected = self.base.power(self.level_map[space.distances[i][j]])
                actual = distance(points[u], points[v])
                if actual != expected:
                    problems.append(f"|{u} - {v}|_p = {actual}, expected {expected}")
        return problems

    def to_report(self) -> Dict[str, Any]:
        return {
            "p": self.base.p,
            "gamma_min": 0,
            "gamma_max": self.depth,
            "level_map": {str(delta): level for delta, level in self.level_map.items()},
            "assignment": {
                label: format_path(self.base, leaf.path) for label, leaf in self.assignment.items()
            },
        }


def embed(space: FiniteUltrametricSpace, base: Base) -> EmbeddingResult:
    violations = validate_ultrametric(space)
    if violations:
        raise ConfigError(
            f"Not an ultrametric space ({len(violations)} violations); first: {violations[0]}"
        )

    ladder = space.ladder()
    level_map = {delta: k + 1 for k, delta in enumerate(ladder)}
    depth = len(ladder)
    ranks = space.rank_matrix()
    paths: Dict[int, List[int]] = {i: [] for i in range(space.size)}

    def descend(members: List[int], level: int) -> None:
        if level == 0:
            return
        classes: List[List[int]] = []
        for i in members:
            for group in classes:
                if ranks[i, group[0]] < level:
                    group.append(i)
                    break
            else:
                classes.append([i])
        if len(classes) > base.p:
            node = "{" + ",".join(space.labels[i] for i in members) + "}"
            raise BranchOverflowError(node, len(classes), base.p)
        for digit, group in enumerate(classes):
            for i in group:
                paths[i].append(digit)
            descend(group, level - 1)

    descend(list(range(space.size)), depth)

    assignment = {
        space.labels[i]: BallAddress(base, 0, tuple(paths[i])) for i in range(space.size)
    }
    logger.info(f"Embedded {space.size} points into Q_{base.p} with root ball p^{depth}")
    return EmbeddingResult(base, assignment, level_map)


def to_measure_tree(
    result: EmbeddingResult,
    window: Optional[Window] = None,
    leaf_density=1,
) -> MeasureTree:
    """Density `leaf_density` on the leaf holding each embedded point, 0 elsewhere."""
    window = window or result.window
    density = Fraction(leaf_density)
    if density <= 0:
        raise ConfigError(f"Leaf density must be positive, got {leaf_density}")
    if window.gamma_max < result.depth:
        raise WindowTooShallowError(
            f"Root ball p^{window.gamma_max} cannot hold distances up to p^{result.depth}"
        )
    if window.gamma_min > 0:
        raise WindowTooShallowError(
            f"Leaves of radius p^{window.gamma_min} merge points at distance p^1"
        )

    leaves = {ball_of(x, window.gamma_min, window): density for x in result.points().values()}
    return MeasureTree(result.base, window, leaves)


def embedded_distances(result: EmbeddingResult) -> np.ndarray:
    """p-adic distances between the embedded points, in assignment order."""
    points = list(result.points().values())
    return np.array([[float(distance(x, y)) for y in points] for x in points]).reshape(len(points), len(points))
