"""
Reduction of the equation with potential,

    df/dt = integral of W(|x - y|_p) (U(y) f(y) - U(x) f(x)) d_p y,

to the operator with measure U(x) d_p x plus a reaction term:

    df/dt = W_U f + V(x) f,   V(x) = integral of W(|x - y|_p) (U(y) - U(x)) d_p y.

Both integrals run over the whole window against plain Haar measure; the
density of the tree only fixes the leaves.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List
import logging

import numpy as np

from ..exceptions import NegativePotentialError
from ..kernels import RateProfile
from ..measures import MeasureTree
from ..oracle import build_generator, kernel_matrix
from ..spectral import PiecewiseFunction, check_compatible

logger = logging.getLogger(__name__)


@dataclass
class PotentialReduction:
    weighted_measure: MeasureTree
    reaction: PiecewiseFunction


def _exact_values(U: PiecewiseFunction) -> List[Fraction]:
    values = [Fraction(v) for v in U.values]
    negative = [i for i, v in enumerate(values) if v < 0]
    if negative:
        raise NegativePotentialError(
            f"Potential is negative on {len(negative)} leaves (first at leaf {negative[0]})"
        )
    return values


def reaction_term(tree: MeasureTree, kernel: RateProfile, U: PiecewiseFunction) -> PiecewiseFunction:
    """
    V(x) level by level against the leaf Haar volume. Ball sums are exact
    rationals, so a constant U gives exactly zero on every leaf.
    """
    check_compatible(tree, kernel)
    potential = np.array(_exact_values(U), dtype=object)
    volume = np.full(tree.leaf_count, tree.leaf_volume, dtype=object)
    u = potential * volume

    reaction = np.zeros(tree.leaf_count)
    inner_u, inner_v = u, volume
    for level in range(tree.window.gamma_min + 1, tree.window.gamma_max + 1):
        ball_u = tree.expand_level(tree.level_sums(u, level), level)
        ball_v = tree.expand_level(tree.level_sums(volume, level), level)
        shell = (ball_u - inner_u) - potential * (ball_v - inner_v)
        reaction += kernel.w(level) * np.array([float(v) for v in shell])
        inner_u, inner_v = ball_u, ball_v
    return PiecewiseFunction(tree, reaction)


def reduce_potential(tree: MeasureTree, kernel: RateProfile, U: PiecewiseFunction) -> PotentialReduction:
    reaction = reaction_term(tree, kernel, U)
    return PotentialReduction(tree.with_densities(_exact_values(U)), reaction)


def assemble_potential_generator(tree: MeasureTree, kernel: RateProfile, U: PiecewiseFunction) -> np.ndarray:
    """
    Dense generator of the equation with potential, built directly:
    L[x, y] = W U(y) p^gamma_min, L[x, x] = -U(x) * sum_{y != x} W p^gamma_min.
    """
    u = np.array([float(v) for v in _exact_values(U)])
    k = kernel_matrix(tree, kernel) * float(tree.leaf_volume)
    direct = k * u[None, :]
    np.fill_diagonal(direct, -u * k.sum(axis=1))
    return direct


def reduced_generator(kernel: RateProfile, reduction: PotentialReduction) -> np.ndarray:
    """W_U + diag(V) as a dense matrix."""
    weighted = build_generator(reduction.weighted_measure, kernel).matrix
    return weighted + np.diag(reduction.reaction.values)


def generator_identity_residual(tree: MeasureTree, kernel: RateProfile, U: PiecewiseFunction) -> float:
    """Largest entrywise gap between the direct and the reduced generator."""
    reduction = reduce_potential(tree, kernel, U)
    gap = assemble_potential_generator(tree, kernel, U) - reduced_generator(kernel, reduction)
    residual = float(np.max(np.abs(gap))) if gap.size else 0.0
    logger.info(f"Potential generator identity residual: {residual:.3e}")
    return residual
