"""
Orthonormal wavelet basis of L2(m d_p x) on the support.

At a parent ball P with nonempty children, the child with the smallest digit
is the reference r, and for every other nonempty child b

    phi_b = (1/k) * sqrt(V_b) / V_r * (f_r + k * V_r / V_b * f_b),

where k = -1 +- sqrt(V_P / V_r). Nodes with c nonempty children give c - 1
elements; the constant 1/sqrt(V_total) completes the set.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple
import logging
import math

import numpy as np

from ..exceptions import ConfigError, ZeroMeasureBallError
from ..measures import MeasureTree
from ..padic import BallAddress, format_path, parent
from .eigen import EigenfunctionIndex, eigenfunction_f
from .functions import PiecewiseFunction

logger = logging.getLogger(__name__)

SIGNS = ("+", "-")


@dataclass
class BasisElement:
    """One phi_{gamma,n,b}, or the constant mode when `parent` is None."""
    function: PiecewiseFunction
    parent: Optional[BallAddress] = None
    b: Optional[int] = None
    k: Optional[float] = None
    reference: Optional[int] = None

    @property
    def is_constant(self) -> bool:
        return self.parent is None

    @property
    def gamma(self) -> Optional[int]:
        return None if self.parent is None else self.parent.level

    @property
    def label(self) -> str:
        if self.parent is None:
            return "constant"
        path = format_path(self.parent.base, self.parent.path) or "root"
        return f"phi[gamma={self.gamma}, n={path}, b={self.b}]"


def reference_digit(tree: MeasureTree, ball: BallAddress) -> int:
    """Smallest digit whose sub-ball has positive measure."""
    digits = tree.nonempty_children(ball)
    if not digits:
        raise ZeroMeasureBallError(f"{ball} has no sub-ball of positive measure")
    if digits[0] != 0:
        logger.debug(f"Reference sub-ball of {ball} relabelled to digit {digits[0]}")
    return digits[0]


def root_k(v_parent: float, v_reference: float, sign: str = "+") -> float:
    """Root of k^2 r + 2 k r - (1 - r) = 0 with r = V_r / V_P."""
    if sign not in SIGNS:
        raise ConfigError(f"Sign must be '+' or '-', got {sign!r}")
    root = math.sqrt(v_parent / v_reference)
    return -1.0 + root if sign == "+" else -1.0 - root


def basis_element(
    tree: MeasureTree,
    gamma: int,
    parent_ball: BallAddress,
    b: int,
    sign: str = "+",
) -> BasisElement:
    if parent_ball.level != gamma:
        raise ValueError(f"{parent_ball} is not a ball of radius p^{gamma}")
    digits = tree.nonempty_children(parent_ball)
    if len(digits) < 2:
        raise ZeroMeasureBallError(
            f"{parent_ball} has {len(digits)} nonempty sub-balls; a basis element needs two"
        )
    reference = reference_digit(tree, parent_ball)
    if b == reference or b not in digits:
        raise ValueError(
            f"b={b} must be a nonempty sub-ball of {parent_ball} other than the reference {reference}"
        )

    f_ref = eigenfunction_f(tree, EigenfunctionIndex(parent_ball, reference))
    f_b = eigenfunction_f(tree, EigenfunctionIndex(parent_ball, b))
    v_parent = float(tree.node_measure(parent_ball))
    v_ref = float(tree.node_measure(_sub_ball(parent_ball, reference)))
    v_b = float(tree.node_measure(_sub_ball(parent_ball, b)))

    k = root_k(v_parent, v_ref, sign)
    scale = math.sqrt(v_b) / (k * v_ref)
    values = scale * (f_ref.values + (k * v_ref / v_b) * f_b.values)
    return BasisElement(PiecewiseFunction(tree, values), parent_ball, b, k, reference)


def _sub_ball(parent_ball: BallAddress, digit: int) -> BallAddress:
    return EigenfunctionIndex(parent_ball, digit).sub_ball


def constant_element(tree: MeasureTree) -> BasisElement:
    total = tree.total_measure()
    if total == 0:
        raise ZeroMeasureBallError("The measure is identically zero")
    return BasisElement(PiecewiseFunction.constant(tree, 1.0 / math.sqrt(float(total))))


def enumerate_basis(
    tree: MeasureTree,
    sign: str = "+",
    include_constant: bool = True,
) -> List[BasisElement]:
    """
    Root level first, parents in canonical order, b ascending; the constant
    element, if requested, comes last.
    """
    elements = []
    for gamma in range(tree.window.gamma_max, tree.window.gamma_min, -1):
        for node in tree.nodes(gamma):
            digits = tree.nonempty_children(node) if tree.node_measure(node) > 0 else []
            for b in digits[1:]:
                elements.append(basis_element(tree, gamma, node, b, sign))
    if include_constant:
        elements.append(constant_element(tree))
    logger.info(f"Basis has {len(elements)} elements for {len(tree.support_leaves())} support leaves")
    return elements


def basis_matrix(elements: List[BasisElement]) -> np.ndarray:
    """Rows are basis functions in canonical leaf order."""
    if not elements:
        return np.zeros((0, 0))
    return np.vstack([e.function.as_float().values for e in elements])


def gram_matrix(tree: MeasureTree, elements: List[BasisElement]) -> np.ndarray:
    phi = basis_matrix(elements)
    return (phi * tree.masses) @ phi.T


def gram_residual(tree: MeasureTree, elements: List[BasisElement]) -> float:
    """Largest entrywise deviation of the Gram matrix from the identity."""
    if not elements:
        return 0.0
    gram = gram_matrix(tree, elements)
    return float(np.max(np.abs(gram - np.eye(len(elements)))))


# -- indicator expansion ---------------------------------------------------

@dataclass
class IndicatorExpansion:
    """
    Omega(ball) = sum of coefficient * f(index) over the ancestor chain, plus
    `constant` times the function 1.
    """
    ball: BallAddress
    terms: List[Tuple[Fraction, EigenfunctionIndex]] = field(default_factory=list)
    constant: Fraction = Fraction(0)

    def evaluate(self, tree: MeasureTree, exact: bool = False) -> PiecewiseFunction:
        value = self.constant if exact else float(self.constant)
        result = PiecewiseFunction.constant(tree, value)
        for coefficient, index in self.terms:
            c = coefficient if exact else float(coefficient)
            result = result + eigenfunction_f(tree, index, exact=exact) * c
        return result


def expand_indicator(tree: MeasureTree, ball: BallAddress) -> IndicatorExpansion:
    """
    Expand the indicator of a ball of positive measure along its chain of
    ancestors B_0 = ball, B_1, ..., root:

        Omega(B_0) = sum_j V(B_0)/V(B_j) f(B_{j+1}, digit of B_j) + V(B_0)/V_total.

    The identity holds on every leaf of the window.
    """
    v_ball = tree.require_positive(ball)
    expansion = IndicatorExpansion(ball, constant=v_ball / tree.total_measure())
    current = ball
    while not current.is_root:
        up = parent(current)
        coefficient = v_ball / tree.node_measure(current)
        expansion.terms.append((coefficient, EigenfunctionIndex(up, current.digit)))
        current = up
    return expansion
