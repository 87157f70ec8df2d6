"""
Spectral solution of the Cauchy problem df/dt = W_m f, f(x, 0) = f0(x).

On the support of m the initial condition is projected onto the orthonormal
basis and every mode is damped by exp(lambda t). Zero-density leaves are
driven by the support and are integrated separately (see
padicwalk.kolmogorov.splitting.evolve_complement).
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence
import logging

import numpy as np

from ..exceptions import ZeroMeasureBallError
from ..kernels import RateProfile
from ..measures import MeasureTree
from ..padic import BallAddress
from .basis import BasisElement, basis_matrix, enumerate_basis, expand_indicator
from .eigen import eigenfunction_f, eigenvalue
from .functions import PiecewiseFunction
from .operator import check_compatible

logger = logging.getLogger(__name__)


def check_times(times: Sequence[float]) -> List[float]:
    times = [float(t) for t in times]
    for t in times:
        if not np.isfinite(t) or t < 0:
            raise ValueError(f"Times must be finite and non-negative, got {t}")
    return times


@dataclass
class ModalExpansion:
    """Coefficients of f0 in the basis together with each mode's eigenvalue."""
    tree: MeasureTree
    basis: List[BasisElement]
    coefficients: np.ndarray
    eigenvalues: np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        return basis_matrix(self.basis)

    def at(self, t: float) -> np.ndarray:
        """Modal sum on every leaf; meaningful on the support only."""
        weights = self.coefficients * np.exp(self.eigenvalues * t)
        return weights @ self.matrix

    def support_values(self, t: float) -> PiecewiseFunction:
        return PiecewiseFunction(self.tree, self.at(t)).masked(self.tree.support_mask)

    def mass(self) -> float:
        """Integral of m f, carried by the constant mode alone."""
        return float(sum(
            c * e.function.values[0] * float(self.tree.total_measure())
            for c, e in zip(self.coefficients, self.basis) if e.is_constant
        ))


def modal_expansion(
    tree: MeasureTree,
    kernel: RateProfile,
    f0: PiecewiseFunction,
    sign: str = "+",
    basis: Optional[List[BasisElement]] = None,
) -> ModalExpansion:
    check_compatible(tree, kernel)
    if tree.total_measure() == 0:
        raise ZeroMeasureBallError("Cannot expand on a measure that is identically zero")
    if basis is None:
        basis = enumerate_basis(tree, sign=sign, include_constant=True)

    phi = basis_matrix(basis)
    coefficients = phi @ (tree.masses * f0.as_float().values)

    cache: Dict[BallAddress, float] = {}
    eigenvalues = np.zeros(len(basis))
    for n, element in enumerate(basis):
        if element.is_constant:
            continue
        if element.parent not in cache:
            cache[element.parent] = eigenvalue(tree, kernel, element.gamma, element.parent)
        eigenvalues[n] = cache[element.parent]
    return ModalExpansion(tree, basis, coefficients, eigenvalues)


def solve_cauchy(
    tree: MeasureTree,
    kernel: RateProfile,
    f0: PiecewiseFunction,
    times: Sequence[float],
    sign: str = "+",
) -> List[PiecewiseFunction]:
    """f(., t) on every leaf of the window for each requested time."""
    from ..kolmogorov.splitting import evolve_complement

    times = check_times(times)
    support = tree.support_mask
    expansion = modal_expansion(tree, kernel, f0, sign=sign)
    outside = evolve_complement(tree, kernel, f0.masked(~support), expansion, times)

    solutions = []
    for t, off in zip(times, outside):
        values = np.where(support, expansion.at(t), off.as_float().values)
        solutions.append(PiecewiseFunction(tree, values))
    logger.debug(f"Solved Cauchy problem with {len(expansion.basis)} modes at {len(times)} times")
    return solutions


def indicator_chain_solution(
    tree: MeasureTree,
    kernel: RateProfile,
    ball: BallAddress,
    times: Sequence[float],
) -> List[PiecewiseFunction]:
    """
    Closed-form evolution of Omega(ball): each term of the ancestor-chain
    expansion decays with its own eigenvalue and the constant stays put.
    Exact on every leaf, zero-density leaves included.
    """
    check_compatible(tree, kernel)
    times = check_times(times)
    expansion = expand_indicator(tree, ball)
    terms = [
        (float(c), eigenvalue(tree, kernel, index.gamma, index.parent), eigenfunction_f(tree, index).values)
        for c, index in expansion.terms
    ]
    solutions = []
    for t in times:
        values = np.full(tree.leaf_count, float(expansion.constant))
        for c, lam, f in terms:
            values = values + c * np.exp(lam * t) * f
        solutions.append(PiecewiseFunction(tree, values))
    return solutions
