"""
Direct quadrature of the measure-weighted operator

    (W_m f)(x) = integral of m(y) W(|x - y|_p) (f(y) - f(x)) d_p y

for leaf-constant f. Leaves at ultrametric distance p^g from x are exactly
the leaves of B_g(x) outside B_{g-1}(x), so the integral is a sum over
levels of ball aggregates.
"""

import logging

import numpy as np

from ..exceptions import ConfigError
from ..kernels import RateProfile
from ..measures import MeasureTree
from .functions import PiecewiseFunction

logger = logging.getLogger(__name__)


def check_compatible(tree: MeasureTree, kernel: RateProfile) -> None:
    """The kernel must be tabulated on the tree's base and window."""
    if kernel.base != tree.base or kernel.window != tree.window:
        raise ConfigError(
            f"Kernel window {kernel.window} (p={kernel.base.p}) does not match "
            f"measure window {tree.window} (p={tree.base.p})"
        )


def shell_sums(tree: MeasureTree, kernel: RateProfile, weighted: np.ndarray) -> np.ndarray:
    """
    For every leaf x, sum over the other leaves y of W(|x - y|_p) * weighted[y].

    `weighted` may be 1-D (one function) or 2-D (one function per row).
    """
    check_compatible(tree, kernel)
    weighted = np.atleast_2d(np.asarray(weighted, dtype=float))
    rows = weighted.shape[0]
    out = np.zeros_like(weighted)
    inner = weighted
    for level in range(tree.window.gamma_min + 1, tree.window.gamma_max + 1):
        block = tree.block_size(level)
        ball = np.repeat(weighted.reshape(rows, -1, block).sum(axis=2), block, axis=1)
        out += kernel.w(level) * (ball - inner)
        inner = ball
    return out


def apply_operator(tree: MeasureTree, kernel: RateProfile, f: PiecewiseFunction) -> PiecewiseFunction:
    """W_m f evaluated on every leaf of the window."""
    values = f.as_float().values
    masses = tree.masses
    neighbours = shell_sums(tree, kernel, masses * values)[0]
    outflow = shell_sums(tree, kernel, masses)[0]
    return PiecewiseFunction(tree, neighbours - values * outflow)


def absorption_rates(tree: MeasureTree, kernel: RateProfile) -> np.ndarray:
    """R(x) = integral over y != leaf(x) of m(y) W(|x - y|_p) d_p y."""
    return shell_sums(tree, kernel, tree.masses)[0]
