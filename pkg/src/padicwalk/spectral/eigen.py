"""
Wavelet-type eigenfunctions of W_m.

For a ball P of radius p^gamma with sub-ball B_a of radius p^(gamma-1),

    f = Omega(B_a) - V_{gamma-1}(B_a) / V_gamma(P) * Omega(P)

satisfies W_m f = lambda f with lambda depending on P only. The relation
holds leaf by leaf, including leaves where m vanishes.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Union
import logging

import numpy as np

from ..exceptions import ZeroMeasureBallError
from ..kernels import RateProfile
from ..measures import MeasureTree
from ..padic import BallAddress, ancestor, format_path
from .functions import PiecewiseFunction
from .operator import apply_operator, check_compatible

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EigenfunctionIndex:
    """The triple (gamma, n, a): a parent ball and the digit of one sub-ball."""
    parent: BallAddress
    a: int

    def __post_init__(self):
        if not 0 <= self.a < self.parent.base.p:
            raise ValueError(f"Digit {self.a} outside [0, {self.parent.base.p - 1}]")

    @property
    def gamma(self) -> int:
        return self.parent.level

    @property
    def sub_ball(self) -> BallAddress:
        return BallAddress(self.parent.base, self.parent.level - 1, self.parent.path + (self.a,))

    def __str__(self) -> str:
        path = format_path(self.parent.base, self.parent.path)
        return f"f[gamma={self.gamma}, n={path or 'root'}, a={self.a}]"


@dataclass(frozen=True)
class Eigenpair:
    index: EigenfunctionIndex
    eigenvalue: float


def _check_parent(tree: MeasureTree, gamma: int, parent: BallAddress) -> Fraction:
    if parent.level != gamma:
        raise ValueError(f"{parent} is not a ball of radius p^{gamma}")
    if not tree.window.gamma_min < gamma <= tree.window.gamma_max:
        raise ValueError(
            f"gamma={gamma} must satisfy {tree.window.gamma_min} < gamma <= {tree.window.gamma_max}"
        )
    return tree.require_positive(parent)


def eigenvalue(tree: MeasureTree, kernel: RateProfile, gamma: int, parent: BallAddress) -> float:
    """
    lambda = -[sum_{i=gamma}^{gamma_max-1} (W(p^i) - W(p^(i+1))) V_i(P)
               + W(p^gamma_max) * V_total]

    The series over i >= gamma_max collapses to the last term because every
    ball above the root has the total measure and W vanishes at infinity.
    """
    check_compatible(tree, kernel)
    _check_parent(tree, gamma, parent)
    total = kernel.tail_total * float(tree.total_measure())
    for i in range(gamma, tree.window.gamma_max):
        total += kernel.delta_w(i) * float(tree.node_measure(ancestor(parent, i)))
    return -total


def eigenfunction_f(tree: MeasureTree, index: EigenfunctionIndex, exact: bool = False) -> PiecewiseFunction:
    """f_{gamma,n,a} on every leaf of the window."""
    v_parent = _check_parent(tree, index.gamma, index.parent)
    v_sub = tree.node_measure(index.sub_ball)
    if v_sub == 0:
        raise ZeroMeasureBallError(f"Sub-ball {index.sub_ball} of {index} has zero measure")

    ratio = v_sub / v_parent
    f = PiecewiseFunction.zeros(tree, exact=exact)
    f.values[tree.ball_slice(index.sub_ball)] = Fraction(1) if exact else 1.0
    f.values[tree.ball_slice(index.parent)] -= ratio if exact else float(ratio)
    return f


def intermediate_g(
    tree: MeasureTree,
    gamma: int,
    parent: BallAddress,
    a: int,
    b: int,
    exact: bool = False,
) -> PiecewiseFunction:
    """g_{gamma,n,a,b} = V(B_b) Omega(B_a) - V(B_a) Omega(B_b)."""
    if parent.level != gamma:
        raise ValueError(f"{parent} is not a ball of radius p^{gamma}")
    ball_a = EigenfunctionIndex(parent, a).sub_ball
    ball_b = EigenfunctionIndex(parent, b).sub_ball
    v_a = tree.node_measure(ball_a)
    v_b = tree.node_measure(ball_b)

    g = PiecewiseFunction.zeros(tree, exact=exact)
    if a == b:
        return g
    g.values[tree.ball_slice(ball_a)] = v_b if exact else float(v_b)
    g.values[tree.ball_slice(ball_b)] = -v_a if exact else -float(v_a)
    return g


def inner_product_f(
    tree: MeasureTree,
    first: EigenfunctionIndex,
    second: EigenfunctionIndex,
    exact: bool = False,
) -> Union[float, Fraction]:
    """Closed-form L2(m d_p x) inner product of two eigenfunctions."""
    if first.parent != second.parent:
        value = Fraction(0)
    else:
        v_parent = tree.node_measure(first.parent)
        v_a = tree.node_measure(first.sub_ball)
        v_b = tree.node_measure(second.sub_ball)
        value = (v_a if first.a == second.a else Fraction(0)) - v_a * v_b / v_parent
    return value if exact else float(value)


def admissible_indices(tree: MeasureTree) -> List[EigenfunctionIndex]:
    """
    Every (gamma, n, a) whose sub-ball has positive measure, coarsest level
    first, parents and digits in canonical order.
    """
    indices = []
    for gamma in range(tree.window.gamma_max, tree.window.gamma_min, -1):
        for parent, measure in zip(tree.nodes(gamma), tree.level_measures(gamma)):
            if measure == 0:
                continue
            indices.extend(EigenfunctionIndex(parent, a) for a in tree.nonempty_children(parent))
    return indices


def enumerate_eigenpairs(tree: MeasureTree, kernel: RateProfile) -> List[Eigenpair]:
    """All admissible eigenfunctions with their eigenvalues."""
    cache: Dict[BallAddress, float] = {}
    pairs = []
    for index in admissible_indices(tree):
        if index.parent not in cache:
            cache[index.parent] = eigenvalue(tree, kernel, index.gamma, index.parent)
        pairs.append(Eigenpair(index, cache[index.parent]))
    logger.info(f"Enumerated {len(pairs)} eigenpairs over {len(cache)} parent balls")
    return pairs


def eigen_residual(tree: MeasureTree, kernel: RateProfile, pair: Eigenpair) -> float:
    """Max-norm of W_m f - lambda f over every leaf."""
    f = eigenfunction_f(tree, pair.index)
    image = apply_operator(tree, kernel, f)
    return float(np.max(np.abs(image.values - pair.eigenvalue * f.values)))
