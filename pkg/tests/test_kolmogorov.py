"""Tests for the support/complement splitting and the potential reduction."""

from fractions import Fraction

import numpy as np
import pytest
from scipy import linalg

from padicwalk.exceptions import NegativePotentialError
from padicwalk.kolmogorov import (
    SplitSolution,
    absorption_rates,
    assemble_potential_generator,
    evolve_complement,
    generator_identity_residual,
    mode_integral,
    reaction_term,
    reduce_potential,
    reduced_generator,
    restrict_to_support,
    split,
)
from padicwalk.measures import uniform_ball
from padicwalk.oracle import build_generator, lca_levels
from padicwalk.spectral import PiecewiseFunction, modal_expansion, solve_cauchy

from .conftest import CORPUS, ORACLE_CORPUS, make_corpus

SPARSE_CORPUS = make_corpus([(2, 4, 0), (3, 3, 1), (5, 2, 0), (2, 5, 1)], zero_fraction=0.4)


def random_function(tree, seed=0):
    rng = np.random.default_rng(seed)
    return PiecewiseFunction(tree, rng.normal(size=tree.leaf_count))


class TestSplitting:
    def test_restrict_is_idempotent(self, half_support_tree):
        f = random_function(half_support_tree)
        once = restrict_to_support(half_support_tree, f)
        twice = restrict_to_support(half_support_tree, once)
        assert np.array_equal(once.values, twice.values)
        assert np.all(once.values[~half_support_tree.support_mask] == 0)

    def test_split_combines_back(self, half_support_tree):
        f = random_function(half_support_tree, seed=1)
        parts = split(half_support_tree, f)
        assert np.array_equal(parts.combine().values, f.values)

    def test_overlapping_parts_rejected(self, half_support_tree):
        f = random_function(half_support_tree, seed=2)
        with pytest.raises(ValueError):
            SplitSolution(f, PiecewiseFunction.zeros(half_support_tree))

    def test_absorption_rates_match_generator_diagonal(self, half_support_tree, z2_kernel):
        gen = build_generator(half_support_tree, z2_kernel)
        np.testing.assert_allclose(
            absorption_rates(half_support_tree, z2_kernel), -np.diag(gen.matrix), rtol=1e-12
        )


class TestModeIntegral:
    def test_resonance(self):
        rate = np.array([0.5, 2.0, 7.0])
        t = 1.5
        value = mode_integral(-rate, rate, t)
        np.testing.assert_allclose(value, t * np.exp(-rate * t), rtol=1e-14)

    def test_closed_form(self):
        lam, rate, t = -3.0, 0.25, 2.0
        expected = (np.exp(lam * t) - np.exp(-rate * t)) / (lam + rate)
        assert mode_integral(np.array(lam), np.array(rate), t) == pytest.approx(expected, rel=1e-14)

    def test_continuous_across_branches(self):
        rate = np.array([1.0])
        t = 1.0
        below = mode_integral(np.array([-2.0 + 1e-9]), rate, t)
        above = mode_integral(np.array([-2.0 - 1e-9]), rate, t)
        assert below[0] == pytest.approx(above[0], rel=1e-7)

    def test_zero_time(self):
        assert mode_integral(np.array([-1.0, -4.0]), np.array([2.0, 3.0]), 0.0).tolist() == [0.0, 0.0]


class TestComplement:
    def test_pure_decay_without_support_data(self, half_support_tree, z2_kernel):
        tree = half_support_tree
        outside = ~tree.support_mask
        f0 = PiecewiseFunction(tree, np.where(outside, 2.0, 0.0))
        rates = absorption_rates(tree, z2_kernel)
        for t, solution in zip([0.0, 0.3, 2.0], solve_cauchy(tree, z2_kernel, f0, [0.0, 0.3, 2.0])):
            np.testing.assert_allclose(solution.values[outside], 2.0 * np.exp(-rates[outside] * t), rtol=1e-12)
            np.testing.assert_allclose(solution.values[~outside], 0.0, atol=1e-14)

    def test_support_leaves_left_zero(self, half_support_tree, z2_kernel):
        f0 = random_function(half_support_tree, seed=3)
        expansion = modal_expansion(half_support_tree, z2_kernel, f0)
        (values,) = evolve_complement(half_support_tree, z2_kernel, f0, expansion, [1.0])
        assert np.all(values.values[half_support_tree.support_mask] == 0)

    @pytest.mark.parametrize("tree, kernel", SPARSE_CORPUS + ORACLE_CORPUS[:3])
    def test_matches_full_matrix_exponential(self, tree, kernel):
        gen = build_generator(tree, kernel)
        f0 = random_function(tree, seed=4)
        times = [0.1, 1.0, 10.0]
        for t, solution in zip(times, solve_cauchy(tree, kernel, f0, times)):
            expected = linalg.expm(gen.matrix * t) @ f0.values
            scale = max(1.0, float(np.max(np.abs(expected))))
            assert np.max(np.abs(solution.values - expected)) <= 1e-8 * scale


class TestPotential:
    @pytest.mark.parametrize("tree, kernel", CORPUS[:8])
    def test_generator_identity(self, tree, kernel):
        rng = np.random.default_rng(5)
        U = PiecewiseFunction(tree, rng.uniform(0.0, 3.0, size=tree.leaf_count))
        scale = max(1.0, float(np.max(np.abs(assemble_potential_generator(tree, kernel, U)))))
        assert generator_identity_residual(tree, kernel, U) <= 1e-12 * scale

    def test_haar_identity(self, z2_base, z2_window, z2_kernel):
        tree = uniform_ball(z2_base, z2_window)
        U = PiecewiseFunction(tree, np.array([0.0, 1.0, 2.0, 0.5, 3.0, 1.0, 1.0, 0.25]))
        reduction = reduce_potential(tree, z2_kernel, U)
        assert [float(d) for d in reduction.weighted_measure.densities] == U.values.tolist()
        direct = assemble_potential_generator(tree, z2_kernel, U)
        np.testing.assert_allclose(reduced_generator(z2_kernel, reduction), direct, atol=1e-12)

    def test_reaction_uses_plain_haar_weight(self, half_support_tree, z2_kernel):
        U = PiecewiseFunction(half_support_tree, np.array([0.0, 1.0, 2.0, 0.5, 3.0, 1.0, 1.0, 0.25]))
        reaction = reaction_term(half_support_tree, z2_kernel, U).values
        np.testing.assert_allclose(
            reaction, [3.90625, -1.59375, -4.84375, 3.40625, -7.4375, 3.5625, -0.5625, 3.5625], atol=1e-12
        )

    @pytest.mark.parametrize("tree, kernel", SPARSE_CORPUS)
    def test_reaction_matches_leaf_quadrature(self, tree, kernel):
        rng = np.random.default_rng(8)
        u = rng.uniform(0.0, 2.0, size=tree.leaf_count)
        rates = np.array([kernel.w(level) for level in kernel.levels()])
        w = rates[lca_levels(tree) - tree.window.gamma_min]
        np.fill_diagonal(w, 0.0)
        expected = float(tree.leaf_volume) * (w @ u - u * w.sum(axis=1))
        reaction = reaction_term(tree, kernel, PiecewiseFunction(tree, u)).values
        scale = max(1.0, float(np.max(np.abs(expected))))
        np.testing.assert_allclose(reaction, expected, rtol=0, atol=1e-10 * scale)

    def test_weighted_measure_ignores_tree_density(self, half_support_tree, z2_kernel):
        U = PiecewiseFunction.constant(half_support_tree, Fraction(2))
        reduction = reduce_potential(half_support_tree, z2_kernel, U)
        assert reduction.weighted_measure.densities == [Fraction(2)] * 8
        assert generator_identity_residual(half_support_tree, z2_kernel, U) <= 1e-12

    @pytest.mark.parametrize("tree, kernel", CORPUS[:5])
    def test_constant_potential_has_no_reaction(self, tree, kernel):
        U = PiecewiseFunction.constant(tree, Fraction(7, 3))
        reaction = reaction_term(tree, kernel, U)
        assert np.all(reaction.values == 0.0)

    @pytest.mark.parametrize("tree, kernel", CORPUS[:5])
    def test_reaction_is_row_sum(self, tree, kernel):
        rng = np.random.default_rng(6)
        U = PiecewiseFunction(tree, rng.uniform(0.0, 2.0, size=tree.leaf_count))
        direct = assemble_potential_generator(tree, kernel, U)
        reaction = reaction_term(tree, kernel, U).values
        scale = max(1.0, float(np.max(np.abs(direct))))
        assert np.max(np.abs(reaction - direct.sum(axis=1))) <= 1e-10 * scale

    def test_negative_potential_rejected(self, z2_tree, z2_kernel):
        U = PiecewiseFunction.constant(z2_tree, 1.0)
        U.values[3] = -0.5
        with pytest.raises(NegativePotentialError):
            reduce_potential(z2_tree, z2_kernel, U)
