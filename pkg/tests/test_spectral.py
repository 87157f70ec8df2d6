"""Tests for eigenfunctions, the orthonormal basis and spectral Cauchy solutions."""

from fractions import Fraction
import math

import numpy as np
import pytest

from padicwalk.exceptions import ZeroMeasureBallError
from padicwalk.kernels import table_profile
from padicwalk.measures import MeasureTree, random_measure
from padicwalk.padic import BallAddress, Base, Window, ancestor, parent
from padicwalk.spectral import (
    EigenfunctionIndex,
    PiecewiseFunction,
    admissible_indices,
    apply_operator,
    basis_element,
    eigen_residual,
    eigenfunction_f,
    eigenvalue,
    enumerate_basis,
    enumerate_eigenpairs,
    expand_indicator,
    gram_residual,
    indicator_chain_solution,
    inner_product_f,
    intermediate_g,
    solve_cauchy,
)

from .conftest import CORPUS


def full_nodes(tree):
    """Balls whose p sub-balls all carry positive measure."""
    for gamma in range(tree.window.gamma_max, tree.window.gamma_min, -1):
        for node in tree.nodes(gamma):
            if len(tree.nonempty_children(node)) == tree.base.p:
                yield node


def positive_balls(tree):
    for level in range(tree.window.gamma_min, tree.window.gamma_max + 1):
        for node, measure in zip(tree.nodes(level), tree.level_measures(level)):
            if measure > 0:
                yield node


class TestWorkedExample:
    def test_root_eigenvalue(self, z2_tree, z2_kernel, z2_root):
        assert eigenvalue(z2_tree, z2_kernel, 0, z2_root) == -1.0

    def test_half_eigenvalue(self, z2_tree, z2_kernel, z2_half):
        assert eigenvalue(z2_tree, z2_kernel, -1, z2_half) == -2.5

    def test_eigenfunction_values(self, z2_tree, z2_root):
        f = eigenfunction_f(z2_tree, EigenfunctionIndex(z2_root, 0))
        assert f.values.tolist() == [0.5] * 4 + [-0.5] * 4

    def test_operator_on_eigenfunction(self, z2_tree, z2_kernel, z2_root):
        f = eigenfunction_f(z2_tree, EigenfunctionIndex(z2_root, 0))
        image = apply_operator(z2_tree, z2_kernel, f)
        np.testing.assert_allclose(image.values, -f.values, atol=1e-12)

    def test_inner_products(self, z2_tree, z2_root):
        first = EigenfunctionIndex(z2_root, 0)
        second = EigenfunctionIndex(z2_root, 1)
        assert inner_product_f(z2_tree, first, first, exact=True) == Fraction(1, 4)
        assert inner_product_f(z2_tree, first, second, exact=True) == Fraction(-1, 4)
        assert inner_product_f(z2_tree, first, EigenfunctionIndex(BallAddress(z2_root.base, -1, (0,)), 0)) == pytest.approx(0.0, abs=1e-15)

    def test_basis_element(self, z2_tree, z2_root):
        element = basis_element(z2_tree, 0, z2_root, 1, sign="+")
        k = math.sqrt(2) - 1
        assert element.k == pytest.approx(k, abs=1e-15)
        f0 = eigenfunction_f(z2_tree, EigenfunctionIndex(z2_root, 0))
        np.testing.assert_allclose(element.function.values, math.sqrt(2) * (1 - k) / k * f0.values, atol=1e-12)
        assert element.function.norm() == pytest.approx(1.0, abs=1e-12)

    def test_basis_count(self, z2_tree):
        elements = enumerate_basis(z2_tree)
        assert len(elements) == 8
        assert elements[-1].is_constant
        assert [e.gamma for e in elements[:-1]] == [0, -1, -1, -2, -2, -2, -2]

    def test_indicator_expansion(self, z2_tree, z2_half, z2_root):
        expansion = expand_indicator(z2_tree, z2_half)
        assert expansion.constant == Fraction(1, 2)
        assert expansion.terms == [(Fraction(1), EigenfunctionIndex(z2_root, 0))]
        rebuilt = expansion.evaluate(z2_tree, exact=True)
        assert list(rebuilt.values) == [1] * 4 + [0] * 4

    def test_root_expansion_is_constant(self, z2_tree, z2_root):
        expansion = expand_indicator(z2_tree, z2_root)
        assert expansion.terms == []
        assert expansion.constant == 1

    def test_solution_at_one(self, z2_tree, z2_kernel, z2_half):
        f0 = PiecewiseFunction.indicator(z2_tree, z2_half) * 2.0
        (solution,) = solve_cauchy(z2_tree, z2_kernel, f0, [1.0])
        np.testing.assert_allclose(solution.values[:4], 1 + math.exp(-1), atol=1e-10)
        np.testing.assert_allclose(solution.values[4:], 1 - math.exp(-1), atol=1e-10)

    def test_equilibrates_to_mean(self, z2_tree, z2_kernel, z2_half):
        f0 = PiecewiseFunction.indicator(z2_tree, z2_half) * 2.0
        (solution,) = solve_cauchy(z2_tree, z2_kernel, f0, [50.0])
        np.testing.assert_allclose(solution.values, 1.0, atol=1e-12)

    def test_constant_kernel(self):
        base, window = Base(3), Window(-2, 1)
        tree = random_measure(base, window, seed=9)
        kernel = table_profile({i: 2.0 for i in range(-2, 2)}, window, base)
        total = float(tree.total_measure())
        for pair in enumerate_eigenpairs(tree, kernel):
            assert pair.eigenvalue == pytest.approx(-2.0 * total, rel=1e-14)


class TestEigenfunctions:
    @pytest.mark.parametrize("tree, kernel", CORPUS)
    def test_eigen_residual(self, tree, kernel):
        for pair in enumerate_eigenpairs(tree, kernel):
            assert eigen_residual(tree, kernel, pair) <= 1e-10 * max(1.0, abs(pair.eigenvalue))

    @pytest.mark.parametrize("tree, kernel", CORPUS)
    def test_finer_balls_decay_faster(self, tree, kernel):
        for index in admissible_indices(tree):
            if index.gamma < tree.window.gamma_max:
                outer = parent(index.parent)
                assert eigenvalue(tree, kernel, index.gamma, index.parent) <= eigenvalue(
                    tree, kernel, outer.level, outer
                )

    @pytest.mark.parametrize("tree, kernel", CORPUS)
    def test_zero_mean(self, tree, kernel):
        for index in admissible_indices(tree):
            assert eigenfunction_f(tree, index, exact=True).integral() == 0

    @pytest.mark.parametrize("tree, kernel", CORPUS)
    def test_remark_sum_vanishes(self, tree, kernel):
        for node in full_nodes(tree):
            total = PiecewiseFunction.zeros(tree, exact=True)
            for a in range(tree.base.p):
                total = total + eigenfunction_f(tree, EigenfunctionIndex(node, a), exact=True)
            assert total.is_zero()

    @pytest.mark.parametrize("tree, kernel", CORPUS[:6])
    def test_inner_product_closed_form(self, tree, kernel):
        indices = admissible_indices(tree)
        functions = np.vstack([eigenfunction_f(tree, i).values for i in indices])
        quadrature = (functions * tree.masses) @ functions.T
        closed = np.array([[inner_product_f(tree, i, j) for j in indices] for i in indices])
        assert np.max(np.abs(quadrature - closed)) <= 1e-12 * max(1.0, np.max(np.abs(closed)))

    def test_inner_product_exact(self):
        tree = random_measure(Base(3), Window(-2, 0), seed=4)
        indices = admissible_indices(tree)
        for i in indices:
            f = eigenfunction_f(tree, i, exact=True)
            for j in indices:
                g = eigenfunction_f(tree, j, exact=True)
                assert f.inner(g) == inner_product_f(tree, i, j, exact=True)

    def test_zero_sub_ball_rejected(self, half_support_tree, z2_base):
        with pytest.raises(ZeroMeasureBallError):
            eigenfunction_f(half_support_tree, EigenfunctionIndex(BallAddress(z2_base, -1, (1,)), 1))

    def test_admissible_count(self, z2_tree):
        assert len(admissible_indices(z2_tree)) == 14


class TestIntermediate:
    def test_antisymmetry(self):
        tree = random_measure(Base(5), Window(-2, 0), seed=2)
        root = BallAddress(tree.base, 0, ())
        assert intermediate_g(tree, 0, root, 3, 3, exact=True).is_zero()
        g = intermediate_g(tree, 0, root, 1, 4, exact=True)
        h = intermediate_g(tree, 0, root, 4, 1, exact=True)
        assert (g + h).is_zero()

    @pytest.mark.parametrize("tree, kernel", CORPUS[:8])
    def test_sum_rebuilds_eigenfunction(self, tree, kernel):
        for index in admissible_indices(tree):
            v_parent = tree.node_measure(index.parent)
            total = PiecewiseFunction.zeros(tree, exact=True)
            for b in range(tree.base.p):
                total = total + intermediate_g(tree, index.gamma, index.parent, index.a, b, exact=True)
            expected = eigenfunction_f(tree, index, exact=True)
            assert (total * (1 / v_parent) - expected).is_zero()

    def test_g_is_eigenfunction(self, z2_tree, z2_kernel, z2_half):
        g = intermediate_g(z2_tree, -1, z2_half, 0, 1)
        image = apply_operator(z2_tree, z2_kernel, g)
        np.testing.assert_allclose(image.values, -2.5 * g.values, atol=1e-12)


class TestBasis:
    @pytest.mark.parametrize("sign", ["+", "-"])
    @pytest.mark.parametrize("tree, kernel", CORPUS)
    def test_gram_identity(self, tree, kernel, sign):
        elements = enumerate_basis(tree, sign=sign)
        assert len(elements) == len(tree.support_leaves())
        assert gram_residual(tree, elements) <= 1e-10

    @pytest.mark.parametrize("tree, kernel", CORPUS)
    def test_k_solves_quadratic(self, tree, kernel):
        for element in enumerate_basis(tree, include_constant=False):
            r = float(tree.node_measure(BallAddress(tree.base, element.gamma - 1, element.parent.path + (element.reference,)))) / float(tree.node_measure(element.parent))
            k = element.k
            assert abs(k * k * r + 2 * k * r - (1 - r)) <= 1e-14 * max(1.0, k * k)

    def test_balanced_node(self, z2_tree, z2_half):
        plus = basis_element(z2_tree, -1, z2_half, 1, sign="+")
        minus = basis_element(z2_tree, -1, z2_half, 1, sign="-")
        assert plus.k == pytest.approx(-1 + math.sqrt(2), abs=1e-15)
        assert minus.k == pytest.approx(-1 - math.sqrt(2), abs=1e-15)

    def test_reference_relabelled(self):
        base, window = Base(3), Window(-2, 0)
        densities = [0] * 3 + [1, 2, 0] + [0, 1, 3]
        tree = MeasureTree.from_dense(base, window, densities)
        root = BallAddress(base, 0, ())
        element = basis_element(tree, 0, root, 2)
        assert element.reference == 1
        elements = enumerate_basis(tree)
        assert len(elements) == 4
        assert gram_residual(tree, elements) <= 1e-10

    def test_single_child_has_no_element(self, half_support_tree, z2_base):
        with pytest.raises(ZeroMeasureBallError):
            basis_element(half_support_tree, -1, BallAddress(z2_base, -1, (1,)), 1)

    def test_single_leaf_gives_constant_only(self, z2_base, z2_window):
        tree = MeasureTree.from_dense(z2_base, z2_window, [0, 0, 5, 0, 0, 0, 0, 0])
        elements = enumerate_basis(tree)
        assert len(elements) == 1 and elements[0].is_constant


class TestIndicatorExpansion:
    @pytest.mark.parametrize("tree, kernel", CORPUS)
    def test_reconstruction(self, tree, kernel):
        for ball in positive_balls(tree):
            rebuilt = expand_indicator(tree, ball).evaluate(tree)
            indicator = PiecewiseFunction.indicator(tree, ball)
            assert rebuilt.max_abs_diff(indicator) <= 1e-12
            assert (rebuilt - indicator).norm() <= 1e-10

    def test_exact_reconstruction(self):
        tree = random_measure(Base(2), Window(-3, 0), seed=13)
        for ball in positive_balls(tree):
            rebuilt = expand_indicator(tree, ball).evaluate(tree, exact=True)
            assert (rebuilt - PiecewiseFunction.indicator(tree, ball, exact=True)).is_zero()

    def test_zero_measure_ball(self, half_support_tree, z2_base):
        with pytest.raises(ZeroMeasureBallError):
            expand_indicator(half_support_tree, BallAddress(z2_base, -2, (1, 1)))


class TestOperator:
    @pytest.mark.parametrize("tree, kernel", CORPUS[:5])
    def test_constant_is_annihilated(self, tree, kernel):
        image = apply_operator(tree, kernel, PiecewiseFunction.constant(tree, 1.0))
        assert np.all(image.values == 0.0)

    @pytest.mark.parametrize("tree, kernel", CORPUS[:5])
    def test_linearity(self, tree, kernel):
        rng = np.random.default_rng(0)
        f = PiecewiseFunction(tree, rng.normal(size=tree.leaf_count))
        g = PiecewiseFunction(tree, rng.normal(size=tree.leaf_count))
        combined = apply_operator(tree, kernel, f * 2.0 + g * -0.5)
        separate = apply_operator(tree, kernel, f) * 2.0 + apply_operator(tree, kernel, g) * -0.5
        scale = max(1.0, float(np.max(np.abs(separate.values))))
        assert combined.max_abs_diff(separate) <= 1e-12 * scale

    def test_functions_on_other_windows_rejected(self):
        # Both windows have four leaves.
        coarse = MeasureTree.from_dense(Base(4), Window(-1, 0), [Fraction(1)] * 4)
        fine = MeasureTree.from_dense(Base(2), Window(-2, 0), [Fraction(1)] * 4)
        with pytest.raises(ValueError, match="different windows"):
            PiecewiseFunction.constant(coarse, 1.0) + PiecewiseFunction.constant(fine, 1.0)
        with pytest.raises(ValueError, match="different windows"):
            PiecewiseFunction.constant(coarse, 1.0).inner(PiecewiseFunction.constant(fine, 1.0))

    def test_functions_on_equal_windows_combine(self, z2_tree):
        other = z2_tree.scaled(2)
        total = PiecewiseFunction.constant(z2_tree, 1.0) + PiecewiseFunction.constant(other, 2.0)
        assert total.values.tolist() == [3.0] * z2_tree.leaf_count


class TestCauchy:
    @pytest.mark.parametrize("tree, kernel", CORPUS)
    def test_initial_condition_reproduced(self, tree, kernel):
        rng = np.random.default_rng(1)
        f0 = PiecewiseFunction(tree, rng.normal(size=tree.leaf_count))
        (solution,) = solve_cauchy(tree, kernel, f0, [0.0])
        assert solution.max_abs_diff(f0) <= 1e-10
        assert (solution - f0).norm() <= 1e-10

    @pytest.mark.parametrize("tree, kernel", CORPUS)
    def test_mass_conserved(self, tree, kernel):
        rng = np.random.default_rng(2)
        f0 = PiecewiseFunction(tree, rng.uniform(size=tree.leaf_count))
        mass = f0.integral()
        for solution in solve_cauchy(tree, kernel, f0, [0.1, 1.0, 10.0]):
            assert abs(solution.integral() - mass) <= 1e-10 * max(1.0, abs(mass))

    @pytest.mark.parametrize("tree, kernel", CORPUS)
    def test_chain_solution_agrees(self, tree, kernel):
        leaf = tree.support_leaves()[0]
        ball = ancestor(leaf, min(leaf.level + 2, tree.window.gamma_max))
        times = [0.0, 0.5, 2.0]
        chain = indicator_chain_solution(tree, kernel, ball, times)
        spectral = solve_cauchy(tree, kernel, PiecewiseFunction.indicator(tree, ball), times)
        for a, b in zip(chain, spectral):
            assert a.max_abs_diff(b) <= 1e-9

    def test_negative_time_rejected(self, z2_tree, z2_kernel):
        with pytest.raises(ValueError):
            solve_cauchy(z2_tree, z2_kernel, PiecewiseFunction.constant(z2_tree), [-1.0])
