"""Shared fixtures: the worked Z_2 example and a seeded corpus of random trees."""

from fractions import Fraction

import pytest

from padicwalk.kernels import vladimirov_profile
from padicwalk.measures import MeasureTree, random_measure, uniform_ball
from padicwalk.padic import BallAddress, Base, Window

ALPHAS = (0.5, 1.0, 2.0)

# (p, depth, gamma_max) per corpus entry, at most 256 leaves; 4 and 6 are composite bases
SHAPES = [
    (2, 5, 0), (3, 4, 1), (5, 3, 0), (2, 4, 2), (3, 5, 0),
    (5, 2, 1), (2, 3, -1), (3, 3, 0), (5, 3, 1), (2, 5, 1),
    (3, 2, 2), (2, 2, 0), (3, 4, 0), (5, 2, 0), (2, 4, 0),
    (2, 6, 0), (2, 7, -1), (2, 3, 2), (2, 6, 1), (2, 1, 0),
    (2, 8, 0), (2, 2, -2), (2, 7, 3), (2, 5, -3), (2, 6, 2),
    (3, 1, 0), (3, 5, 1), (3, 3, -2), (3, 2, 0), (3, 4, 3),
    (3, 3, 2), (3, 5, -1), (3, 1, 4), (5, 1, 0), (5, 3, -1),
    (5, 2, 3), (5, 3, 2), (5, 1, -2), (4, 2, 0), (4, 3, 0),
    (4, 4, 1), (4, 1, 0), (4, 3, -1), (4, 2, 2), (4, 4, 0),
    (6, 2, 0), (6, 3, 0), (6, 1, 1), (6, 2, -1), (6, 3, 1),
]


def make_corpus(shapes=SHAPES, zero_fraction=0.2):
    corpus = []
    for seed, (p, depth, gamma_max) in enumerate(shapes):
        base = Base(p)
        window = Window(gamma_max - depth, gamma_max)
        tree = random_measure(base, window, seed=seed, zero_fraction=zero_fraction)
        kernel = vladimirov_profile(ALPHAS[seed % len(ALPHAS)], window, base)
        corpus.append(pytest.param(tree, kernel, id=f"p{p}-d{depth}-g{gamma_max}-s{seed}"))
    return corpus


CORPUS = make_corpus()

# Small trees for the dense oracles: moderate rates keep the matrix exponential well scaled
ORACLE_CORPUS = make_corpus([
    (2, 4, 0), (3, 3, 1), (5, 2, 0), (3, 5, 2), (2, 5, 1), (5, 3, 2),
])


@pytest.fixture
def z2_base():
    return Base(2)


@pytest.fixture
def z2_window():
    return Window(-3, 0)


@pytest.fixture
def z2_tree(z2_base, z2_window):
    """Indicator of Z_2 resolved down to radius 2^-3."""
    return uniform_ball(z2_base, z2_window)


@pytest.fixture
def z2_kernel(z2_base, z2_window):
    """W(2^i) = 2^(-2i)."""
    return vladimirov_profile(1.0, z2_window, z2_base)


@pytest.fixture
def z2_root(z2_base):
    return BallAddress(z2_base, 0, ())


@pytest.fixture
def z2_half(z2_base):
    """B_{-1}(0), the first half of Z_2."""
    return BallAddress(z2_base, -1, (0,))


@pytest.fixture
def half_support_tree(z2_base, z2_window):
    """Density 1 on B_{-1}(0), 3/2 on one leaf of B_{-1}(1), zero elsewhere."""
    densities = [Fraction(1)] * 4 + [Fraction(0), Fraction(3, 2), Fraction(0), Fraction(0)]
    return MeasureTree.from_dense(z2_base, z2_window, densities)
