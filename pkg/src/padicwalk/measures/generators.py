"""Generators that expand measure formulas into leaf tables."""

from fractions import Fraction
from typing import Optional
import logging

import numpy as np

from ..padic import BallAddress, Base, Window, root_ball
from .tree import MeasureTree

logger = logging.getLogger(__name__)


def uniform_ball(
    base: Base,
    window: Window,
    ball: Optional[BallAddress] = None,
    density=1,
) -> MeasureTree:
    """Constant density on one ball (the whole root ball by default), 0 elsewhere."""
    tree = MeasureTree(base, window)
    ball = ball or root_ball(base, window)
    densities = [Fraction(0)] * tree.leaf_count
    densities[tree.ball_slice(ball)] = [Fraction(density)] * tree.block_size(ball.level)
    return tree.with_densities(densities)


def random_measure(
    base: Base,
    window: Window,
    seed: int,
    zero_fraction: float = 0.2,
    max_numerator: int = 9,
    max_denominator: int = 5,
) -> MeasureTree:
    """
    Random rational leaf densities; roughly zero_fraction of the leaves get
    density 0. At least one leaf is always kept positive.
    """
    rng = np.random.default_rng(seed)
    n = window.leaf_count(base)
    zeros = rng.random(n) < zero_fraction
    numerators = rng.integers(1, max_numerator + 1, size=n)
    denominators = rng.integers(1, max_denominator + 1, size=n)

    densities = [
        Fraction(0) if z else Fraction(int(a), int(b))
        for z, a, b in zip(zeros, numerators, denominators)
    ]
    if not any(densities):
        densities[int(rng.integers(n))] = Fraction(1)
    logger.debug(f"Random measure seed={seed}: {sum(1 for d in densities if d)}/{n} leaves positive")
    return MeasureTree.from_dense(base, window, densities)
