"""Tests for ultrametric validation, the readers and the embedding into Q_p."""

from fractions import Fraction

import numpy as np
import pytest

from padicwalk.embedding import (
    FiniteUltrametricSpace,
    embed,
    embedded_distances,
    load_distance_csv,
    merge_heights,
    parse_dendrogram,
    to_measure_tree,
    validate_ultrametric,
)
from padicwalk.exceptions import BranchOverflowError, ConfigError, WindowTooShallowError
from padicwalk.padic import Base, Window, format_path, to_fraction

THREE_POINTS = "((a,b):1,c):2"
EIGHT_POINTS = "(((a,b,c):1,(d,e):1):3,(f,(g,h):2):3):5"


def paths(result):
    return {label: format_path(result.base, leaf.path) for label, leaf in result.assignment.items()}


class TestValidation:
    def test_ultrametric_passes(self):
        assert validate_ultrametric(parse_dendrogram(EIGHT_POINTS)) == []

    def test_triangle_violation_names_triple(self):
        space = FiniteUltrametricSpace.from_matrix(
            ["a", "b", "c"], [[0, 1, 3], [1, 0, 1], [3, 1, 0]]
        )
        violations = validate_ultrametric(space)
        assert len(violations) == 1
        assert violations[0].kind == "triangle"
        assert violations[0].points == ("a", "b", "c")

    def test_triangle_check_on_larger_space(self):
        n = 256
        matrix = [[(i ^ j).bit_length() for j in range(n)] for i in range(n)]
        matrix[0][1] = matrix[1][0] = 9
        space = FiniteUltrametricSpace.from_matrix([f"p{i}" for i in range(n)], matrix)
        violations = validate_ultrametric(space)
        assert [(v.kind, v.points) for v in violations] == [("triangle", ("p0", "p1", "p2"))]

    def test_axiom_violations(self):
        space = FiniteUltrametricSpace.from_matrix(
            ["a", "b"], [[1, 2], [3, 0]]
        )
        kinds = {v.kind for v in validate_ultrametric(space)}
        assert kinds == {"diagonal", "asymmetric"}

    def test_zero_distance_between_points(self):
        space = FiniteUltrametricSpace.from_matrix(["a", "b"], [[0, 0], [0, 0]])
        assert [v.kind for v in validate_ultrametric(space)] == ["nonpositive"]

    def test_shape_mismatch(self):
        with pytest.raises(ConfigError):
            FiniteUltrametricSpace.from_matrix(["a", "b"], [[0, 1]])

    def test_merge_heights_reproduce_distances(self):
        space = parse_dendrogram(EIGHT_POINTS)
        np.testing.assert_allclose(merge_heights(space), space.as_float())


class TestReaders:
    def test_dendrogram(self):
        space = parse_dendrogram(THREE_POINTS)
        assert space.labels == ("a", "b", "c")
        assert space.delta("a", "b") == 1
        assert space.delta("b", "c") == 2

    @pytest.mark.parametrize("text", ["((a,b):1,c)", "((a,b):1,c):2)", "((a,a):1,c):2", "((a,b):x,c):2"])
    def test_malformed_dendrogram(self, text):
        with pytest.raises(ConfigError):
            parse_dendrogram(text)

    def test_csv_with_label_column(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text(",a,b,c\na,0,1,2\nb,1,0,2\nc,2,2,0\n")
        space = load_distance_csv(path)
        assert space.labels == ("a", "b", "c")
        assert space.delta("a", "c") == 2

    def test_csv_fractions(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("x,y\n0,1/3\n1/3,0\n")
        assert load_distance_csv(path).delta("x", "y") == Fraction(1, 3)

    def test_csv_bad_cell(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("x,y\n0,far\nfar,0\n")
        with pytest.raises(ConfigError):
            load_distance_csv(path)


class TestEmbedding:
    def test_three_points(self):
        result = embed(parse_dendrogram(THREE_POINTS), Base(2))
        assert paths(result) == {"a": "00", "b": "01", "c": "10"}
        assert {k: to_fraction(x) for k, x in result.points().items()} == {
            "a": 0, "b": Fraction(1, 2), "c": Fraction(1, 4)
        }
        assert result.level_map == {Fraction(1): 1, Fraction(2): 2}
        assert result.window == Window(0, 2)
        np.testing.assert_array_equal(embedded_distances(result), [[0, 2, 4], [2, 0, 4], [4, 4, 0]])

    @pytest.mark.parametrize("p", [3, 5])
    def test_isometry(self, p):
        space = parse_dendrogram(EIGHT_POINTS)
        result = embed(space, Base(p))
        assert result.isometry_violations(space) == []
        expected = np.vectorize(lambda d: 0.0 if d == 0 else float(p) ** result.level_map[d])(
            np.array(space.distances, dtype=object)
        )
        np.testing.assert_allclose(embedded_distances(result), expected)

    def test_deterministic(self):
        space = parse_dendrogram(EIGHT_POINTS)
        assert paths(embed(space, Base(3))) == paths(embed(space, Base(3)))

    def test_branch_overflow(self):
        space = parse_dendrogram("(a,b,c):1")
        with pytest.raises(BranchOverflowError) as info:
            embed(space, Base(2))
        assert info.value.count == 3
        assert paths(embed(space, Base(3))) == {"a": "0", "b": "1", "c": "2"}

    def test_rejects_non_ultrametric(self):
        space = FiniteUltrametricSpace.from_matrix(
            ["a", "b", "c"], [[0, 1, 3], [1, 0, 1], [3, 1, 0]]
        )
        with pytest.raises(ConfigError):
            embed(space, Base(2))

    def test_single_point(self):
        space = FiniteUltrametricSpace.from_matrix(["x"], [[0]])
        result = embed(space, Base(2))
        assert result.depth == 0
        tree = to_measure_tree(result)
        assert tree.total_measure() == 1

    def test_report(self):
        report = embed(parse_dendrogram(THREE_POINTS), Base(2)).to_report()
        assert report["gamma_max"] == 2
        assert report["assignment"]["c"] == "10"
        assert report["level_map"] == {"1": 1, "2": 2}


class TestMeasureTree:
    def test_unit_leaves(self):
        tree = to_measure_tree(embed(parse_dendrogram(THREE_POINTS), Base(2)))
        assert tree.total_measure() == 3
        assert [float(d) for d in tree.densities] == [1, 1, 1, 0]

    def test_finer_window(self):
        result = embed(parse_dendrogram(THREE_POINTS), Base(2))
        tree = to_measure_tree(result, Window(-2, 3), leaf_density=4)
        assert tree.total_measure() == 3
        assert len(tree.support_leaves()) == 3

    @pytest.mark.parametrize("window", [Window(0, 1), Window(1, 3)])
    def test_window_too_shallow(self, window):
        with pytest.raises(WindowTooShallowError):
            to_measure_tree(embed(parse_dendrogram(THREE_POINTS), Base(2)), window)
