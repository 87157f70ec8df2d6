"""
Splitting of a window solution into its part on the support M of m and
its part on the zero-density leaves.

On M the density evolves under W_m alone. A leaf x outside M only receives
mass from M:

    d phi/dt = S(x, t) - R(x) phi,   R(x) = integral of m(y) W(|x - y|_p),

where S is the support integral of the on-M solution. Each mode of the
on-M solution contributes one exponential to S, so the ODE is integrated in
closed form.
"""

from dataclasses import dataclass
from typing import List, Sequence
import logging

import numpy as np
from scipy.special import exprel

from ..kernels import RateProfile
from ..measures import MeasureTree
from ..spectral import ModalExpansion, PiecewiseFunction, shell_sums
from ..spectral import absorption_rates as _absorption_rates
from ..spectral.cauchy import check_times

logger = logging.getLogger(__name__)


@dataclass
class SplitSolution:
    """A window function split into its support part and its complement part."""
    on_support: PiecewiseFunction
    off_support: PiecewiseFunction

    def __post_init__(self):
        support = self.on_support.tree.support_mask
        if np.any(self.on_support.as_float().values[~support] != 0):
            raise ValueError("on_support part is nonzero off the support")
        if np.any(self.off_support.as_float().values[support] != 0):
            raise ValueError("off_support part is nonzero on the support")

    def combine(self) -> PiecewiseFunction:
        return self.on_support + self.off_support


def restrict_to_support(tree: MeasureTree, f: PiecewiseFunction) -> PiecewiseFunction:
    """The characteristic function of M times f."""
    return f.masked(tree.support_mask)


def split(tree: MeasureTree, f: PiecewiseFunction) -> SplitSolution:
    return SplitSolution(restrict_to_support(tree, f), f.masked(~tree.support_mask))


def absorption_rates(tree: MeasureTree, kernel: RateProfile) -> np.ndarray:
    """R(x) for every leaf: the total rate of jumps from x into M."""
    return _absorption_rates(tree, kernel)


def mode_integral(lam: np.ndarray, rate: np.ndarray, t: float) -> np.ndarray:
    """
    integral_0^t exp(lam s) exp(-rate (t - s)) ds, broadcast over lam and rate.

    Written as t exp(-rate t) exprel((lam + rate) t) near the resonance
    lam = -rate and in closed form elsewhere.
    """
    z = lam + rate
    near = np.abs(z * t) < 1.0
    safe_z = np.where(near, 1.0, z)
    with np.errstate(over="ignore", invalid="ignore"):
        direct = (np.exp(lam * t) - np.exp(-rate * t)) / safe_z
        series = t * np.exp(-rate * t) * exprel(np.where(near, z * t, 0.0))
    return np.where(near, series, direct)


def evolve_complement(
    tree: MeasureTree,
    kernel: RateProfile,
    phi0: PiecewiseFunction,
    expansion: ModalExpansion,
    times: Sequence[float],
) -> List[PiecewiseFunction]:
    """
    Values on the zero-density leaves at each time, given their initial
    values `phi0` and the modal expansion of the on-M solution. Support
    leaves are returned as zero.
    """
    times = check_times(times)
    outside = ~tree.support_mask
    rate = absorption_rates(tree, kernel)[outside]
    start = phi0.as_float().values[outside]

    # source[k, x]: support integral of W times mode k, seen from leaf x
    phi = expansion.matrix
    source = shell_sums(tree, kernel, phi * tree.masses)[:, outside]
    weights = expansion.coefficients[:, None] * source

    results = []
    for t in times:
        values = np.zeros(tree.leaf_count)
        if rate.size:
            driven = mode_integral(expansion.eigenvalues[:, None], rate[None, :], t)
            values[outside] = start * np.exp(-rate * t) + (weights * driven).sum(axis=0)
        results.append(PiecewiseFunction(tree, values))
    logger.debug(f"Integrated {int(outside.sum())} complement leaves at {len(times)} times")
    return results
