"""
Dense generator of W_m on the leaves of a window.

G[x, y] = W(p^lca(x, y)) * m(y) * p^gamma_min for x != y and the diagonal
makes every row sum to zero, so (G f)(x) is the exact quadrature of
W_m f for leaf-constant f. Evolution uses the eigendecomposition of the
support block made symmetric by D^(1/2) . D^(-1/2), D = diag(leaf masses).
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple
import logging

import numpy as np
from scipy import linalg

from ..exceptions import NonFiniteGeneratorError, ScaleGuardError, ZeroMeasureBallError
from ..kernels import RateProfile
from ..measures import MeasureTree
from ..spectral import PiecewiseFunction, check_compatible, check_times

logger = logging.getLogger(__name__)

MAX_DENSE_LEAVES = 10_000


def check_scale(tree: MeasureTree, max_leaves: int = MAX_DENSE_LEAVES) -> None:
    if tree.leaf_count > max_leaves:
        raise ScaleGuardError(
            f"Window has {tree.leaf_count} leaves; dense oracles are limited to {max_leaves}"
        )


def lca_levels(tree: MeasureTree) -> np.ndarray:
    """Radius exponent of the smallest ball holding both leaves (gamma_min on the diagonal)."""
    index = np.arange(tree.leaf_count)
    lca = np.full((tree.leaf_count, tree.leaf_count), tree.window.gamma_max, dtype=int)
    for level in range(tree.window.gamma_max - 1, tree.window.gamma_min - 1, -1):
        block = index // tree.block_size(level)
        lca[block[:, None] == block[None, :]] = level
    return lca


def kernel_matrix(tree: MeasureTree, kernel: RateProfile) -> np.ndarray:
    """W(|x - y|_p) between distinct leaves, zero on the diagonal."""
    check_compatible(tree, kernel)
    rates = np.array([kernel.w(level) for level in kernel.levels()])
    k = rates[lca_levels(tree) - tree.window.gamma_min]
    np.fill_diagonal(k, 0.0)
    return k


def generator_from_weights(k: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Off-diagonal k[x, y] * weights[y], rows summing to zero."""
    g = k * weights[None, :]
    np.fill_diagonal(g, 0.0)
    np.fill_diagonal(g, -g.sum(axis=1))
    return g


@dataclass
class DenseGenerator:
    tree: MeasureTree
    kernel: RateProfile
    matrix: np.ndarray
    _eigen: Optional[Tuple[np.ndarray, np.ndarray]] = field(default=None, repr=False)

    def __post_init__(self):
        if not np.all(np.isfinite(self.matrix)):
            raise NonFiniteGeneratorError("Generator has non-finite entries")

    @property
    def leaf_paths(self) -> List[str]:
        return self.tree.leaf_paths()

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.tree.support_mask)

    def symmetrized_support_block(self) -> np.ndarray:
        s = self.support
        root = np.sqrt(self.tree.masses[s])
        block = self.matrix[np.ix_(s, s)]
        sym = root[:, None] * block / root[None, :]
        return 0.5 * (sym + sym.T)

    def eigensystem(self) -> Tuple[np.ndarray, np.ndarray]:
        """Eigenvalues (ascending) and orthonormal eigenvectors of the symmetrized block."""
        if self._eigen is None:
            if self.support.size == 0:
                raise ZeroMeasureBallError("The measure is identically zero")
            self._eigen = linalg.eigh(self.symmetrized_support_block())
            logger.debug(f"Diagonalized support block of size {self.support.size}")
        return self._eigen

    def spectrum(self) -> np.ndarray:
        return self.eigensystem()[0]

    def support_propagator(self, t: float) -> np.ndarray:
        """exp(t G_SS) rebuilt from the symmetric eigendecomposition."""
        values, vectors = self.eigensystem()
        root = np.sqrt(self.tree.masses[self.support])
        sym = (vectors * np.exp(values * t)) @ vectors.T
        return sym / root[:, None] * root[None, :]


def build_generator(
    tree: MeasureTree,
    kernel: RateProfile,
    max_leaves: int = MAX_DENSE_LEAVES,
) -> DenseGenerator:
    check_scale(tree, max_leaves)
    matrix = generator_from_weights(kernel_matrix(tree, kernel), tree.masses)
    logger.info(f"Assembled dense generator on {tree.leaf_count} leaves")
    return DenseGenerator(tree, kernel, matrix)


def expm_apply(
    gen: DenseGenerator,
    f0: PiecewiseFunction,
    times: Sequence[float],
) -> List[PiecewiseFunction]:
    """
    f(t) = exp(G t) f0. Support rows come from the eigendecomposition;
    the zero-density rows from a full scipy matrix exponential.
    """
    times = check_times(times)
    values0 = f0.as_float().values
    s = gen.support
    outside = np.flatnonzero(~gen.tree.support_mask)

    results = []
    for t in times:
        values = np.zeros(gen.tree.leaf_count)
        if s.size:
            values[s] = gen.support_propagator(t) @ values0[s]
        if outside.size:
            values[outside] = (linalg.expm(gen.matrix * t) @ values0)[outside]
        results.append(PiecewiseFunction(gen.tree, values))
    return results


def transition_distribution(gen: DenseGenerator, initial_leaf: int, t: float) -> np.ndarray:
    """
    Law at time t of the jump process on the support started at a leaf:
    row `initial_leaf` of exp(t G_SS), spread back onto all leaves.
    """
    s = gen.support
    position = np.searchsorted(s, initial_leaf)
    if position >= s.size or s[position] != initial_leaf:
        raise ZeroMeasureBallError(f"Leaf {initial_leaf} has zero measure")
    law = np.zeros(gen.tree.leaf_count)
    law[s] = gen.support_propagator(t)[position]
    return law


def total_variation(first: np.ndarray, second: np.ndarray) -> float:
    return 0.5 * float(np.abs(np.asarray(first) - np.asarray(second)).sum())
