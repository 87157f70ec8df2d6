"""
Monte-Carlo jump process on the support of m.

From leaf x the walk jumps to leaf y with rate m(y) W(p^lca(x, y)) p^gamma_min.
Paths are simulated in fixed-size chunks; chunk c draws from
PCG64(seed).jumped(c + 1), so the histogram depends on the seed only.
"""

from dataclasses import dataclass
from typing import List, Optional
import logging

import numpy as np

from ..exceptions import ConfigError, ZeroMeasureBallError
from ..kernels import RateProfile
from ..measures import MeasureTree
from .generator import MAX_DENSE_LEAVES, check_scale, kernel_matrix

logger = logging.getLogger(__name__)

CHUNK_SIZE = 8192
MAX_SEED = 2 ** 64 - 1


@dataclass(frozen=True)
class JumpProcessConfig:
    initial_leaf: int
    horizon: float
    paths: int
    seed: int

    def __post_init__(self):
        if self.horizon < 0:
            raise ConfigError(f"Horizon must be non-negative, got {self.horizon}")
        if self.paths < 1:
            raise ConfigError(f"Path count must be positive, got {self.paths}")
        if not 0 <= self.seed <= MAX_SEED:
            raise ConfigError(f"Seed must be an unsigned 64-bit integer, got {self.seed}")


@dataclass
class OccupancyHistogram:
    """Empirical law of the walk at the horizon, over every leaf of the window."""
    leaf_paths: List[str]
    probabilities: np.ndarray
    paths: int
    seed: int
    absorbing: bool = False

    @property
    def standard_errors(self) -> np.ndarray:
        p = self.probabilities
        return np.sqrt(p * (1.0 - p) / self.paths)

    def tv_bound(self, reference: Optional[np.ndarray] = None) -> float:
        """
        Bound on the expected total-variation error, 0.5 * sum sqrt(p(1-p)/N),
        from the reference law when given, else from the histogram.
        """
        p = self.probabilities if reference is None else np.asarray(reference)
        return 0.5 * float(np.sqrt(np.clip(p * (1.0 - p), 0.0, None) / self.paths).sum())


def rate_matrix(tree: MeasureTree, kernel: RateProfile) -> np.ndarray:
    """Jump rates between support leaves (support-local indices, zero diagonal)."""
    s = np.flatnonzero(tree.support_mask)
    k = kernel_matrix(tree, kernel)[np.ix_(s, s)]
    return k * tree.masses[s][None, :]


def _simulate_chunk(
    rng: np.random.Generator,
    start: int,
    size: int,
    horizon: float,
    totals: np.ndarray,
    cdf: np.ndarray,
) -> np.ndarray:
    state = np.full(size, start, dtype=np.int64)
    clock = np.zeros(size)
    alive = np.ones(size, dtype=bool)
    last = cdf.shape[1] - 1

    while alive.any():
        active = np.flatnonzero(alive)
        rates = totals[state[active]]
        clock[active] += rng.standard_exponential(active.size) / rates
        jumping = active[clock[active] <= horizon]
        alive[active[clock[active] > horizon]] = False
        if jumping.size == 0:
            break
        u = rng.random(jumping.size)
        target = (cdf[state[jumping]] <= u[:, None]).sum(axis=1)
        state[jumping] = np.minimum(target, last)
    return state


def simulate(
    cfg: JumpProcessConfig,
    tree: MeasureTree,
    kernel: RateProfile,
    chunk_size: int = CHUNK_SIZE,
    max_leaves: int = MAX_DENSE_LEAVES,
) -> OccupancyHistogram:
    """Exact (Gillespie) simulation of the walk up to the horizon."""
    check_scale(tree, max_leaves)
    s = np.flatnonzero(tree.support_mask)
    position = np.searchsorted(s, cfg.initial_leaf)
    if position >= s.size or s[position] != cfg.initial_leaf:
        raise ZeroMeasureBallError(f"Initial leaf {cfg.initial_leaf} has zero measure")

    rates = rate_matrix(tree, kernel)
    totals = rates.sum(axis=1)
    counts = np.zeros(s.size, dtype=np.int64)
    absorbing = bool(totals[position] == 0)

    if absorbing:
        logger.warning(f"Leaf {cfg.initial_leaf} is absorbing; every path stays put")
        counts[position] = cfg.paths
    else:
        cdf = np.cumsum(rates, axis=1) / totals[:, None]
        master = np.random.PCG64(cfg.seed)
        for chunk, begin in enumerate(range(0, cfg.paths, chunk_size)):
            size = min(chunk_size, cfg.paths - begin)
            rng = np.random.Generator(master.jumped(chunk + 1))
            final = _simulate_chunk(rng, position, size, cfg.horizon, totals, cdf)
            counts += np.bincount(final, minlength=s.size)
        logger.info(f"Simulated {cfg.paths} paths in {chunk + 1} chunks")

    probabilities = np.zeros(tree.leaf_count)
    probabilities[s] = counts / cfg.paths
    return OccupancyHistogram(tree.leaf_paths(), probabilities, cfg.paths, cfg.seed, absorbing)
