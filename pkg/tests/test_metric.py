import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from ghembed.metric import (
    FiniteMetricSpace,
    chebyshev_distance,
    check_bilipschitz,
    diameter,
    directed_hausdorff,
    euclidean_distance,
    hausdorff_distance_finite,
    validate_metric,
)

coords = st.floats(-1e3, 1e3, allow_nan=False)


def vectors(n):
    return arrays(float, n, elements=coords)


@pytest.mark.parametrize(
    "x, y, expected",
    [((1, 2), (2, 0), 2.0), ((0, 0), (0, 0), 0.0), ((1, 2), (0, 2), 1.0)],
)
def test_chebyshev_examples(x, y, expected):
    assert chebyshev_distance(x, y) == expected


@pytest.mark.parametrize(
    "x, y, expected",
    [((0, 0), (3, 4), 5.0), ((1, 1), (1, 1), 0.0), ((1, 2), (2, 0), math.sqrt(5))],
)
def test_euclidean_examples(x, y, expected):
    assert euclidean_distance(x, y) == pytest.approx(expected, abs=1e-15)


def test_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        chebyshev_distance([1, 2], [1, 2, 3])
    with pytest.raises(ValueError):
        euclidean_distance([1], [1, 2])
    with pytest.raises(ValueError):
        check_bilipschitz([1], [1, 2])


@pytest.mark.parametrize("bad", [[], [float("nan")], [1.0, float("inf")]])
def test_vector_validation(bad):
    with pytest.raises(ValueError):
        chebyshev_distance(bad, bad)


def test_bilipschitz_examples():
    assert check_bilipschitz((0, 0), (3, 4)) == (True, True)
    assert check_bilipschitz((2, 5), (2, 5)) == (True, True)
    # equality case: d_2 = sqrt(2) = sqrt(N) * d_inf
    assert euclidean_distance((0, 0), (1, 1)) == math.sqrt(2) * chebyshev_distance((0, 0), (1, 1))
    assert check_bilipschitz((0, 0), (1, 1), tol=0.0) == (True, True)


@given(st.integers(1, 16).flatmap(lambda n: st.tuples(vectors(n), vectors(n), vectors(n))))
def test_distances_are_metrics(xyz):
    x, y, z = xyz
    for d in (chebyshev_distance, euclidean_distance):
        assert d(x, y) == d(y, x)
        assert d(x, x) == 0
        assert d(x, z) <= d(x, y) + d(y, z) + 1e-12 * (1 + d(x, y) + d(y, z))


@given(st.integers(1, 16).flatmap(lambda n: st.tuples(vectors(n), vectors(n))))
def test_bilipschitz_property(xy):
    x, y = xy
    d_inf, d_2 = chebyshev_distance(x, y), euclidean_distance(x, y)
    scale = 1e-12 * max(1.0, d_2)
    assert d_inf <= d_2 + scale
    assert d_2 <= math.sqrt(x.size) * d_inf + scale


def test_hausdorff_examples():
    assert hausdorff_distance_finite([[0, 0]], [[0, 3], [1, 0]]) == 3
    assert hausdorff_distance_finite([[0, 1], [0, -1]], [[0, 0]]) == 1
    a = [[1, 2], [3, 4], [-1, 0]]
    assert hausdorff_distance_finite(a, a) == 0
    assert hausdorff_distance_finite(a, a[::-1]) == 0


def test_directed_hausdorff_witness_lowest_index():
    value, i, j = directed_hausdorff([[0, 0], [0, 3]], [[0, 1], [0, 2]])
    assert (value, i, j) == (1.0, 0, 0)


def test_hausdorff_rejects_bad_sets():
    with pytest.raises(ValueError):
        hausdorff_distance_finite(np.empty((0, 2)), [[0, 0]])
    with pytest.raises(ValueError):
        hausdorff_distance_finite([[0, 0]], [[0, 0, 0]])


small_sets = st.integers(1, 3).flatmap(
    lambda d: st.tuples(
        *[arrays(float, st.tuples(st.integers(1, 6), st.just(d)), elements=st.integers(-20, 20).map(float)) for _ in range(3)]
    )
)


@given(small_sets)
def test_hausdorff_is_a_metric_on_finite_sets(abc):
    a, b, c = abc
    hab = hausdorff_distance_finite(a, b)
    assert hab == hausdorff_distance_finite(b, a)
    assert hausdorff_distance_finite(a, c) <= hab + hausdorff_distance_finite(b, c)
    same = {tuple(p) for p in a} == {tuple(p) for p in b}
    assert (hab == 0) == same
    assert hab <= diameter(np.vstack([a, b]))


def test_validate_metric_examples():
    assert validate_metric(FiniteMetricSpace(None, [[0]])) == []
    assert validate_metric([[0, 1], [1, 0]]) == []
    v = validate_metric([[0, 1, 3], [1, 0, 1], [3, 1, 0]])
    assert [(x.kind, x.i, x.j, x.k) for x in v] == [("triangle", 0, 2, 1)]
    assert v[0].amount == 1.0
    assert str(v[0]).startswith("triangle violation (0,2) via 1")


def test_validate_metric_other_axioms():
    kinds = {v.kind for v in validate_metric([[1, 2], [3, 0]])}
    assert kinds == {"diagonal", "asymmetric"}
    assert {v.kind for v in validate_metric([[0, -1], [-1, 0]])} == {"negative"}
    # tolerance is configurable
    assert validate_metric([[0, 1, 2 + 1e-10], [1, 0, 1], [2 + 1e-10, 1, 0]]) == []
    assert validate_metric([[0, 1, 2 + 1e-10], [1, 0, 1], [2 + 1e-10, 1, 0]], tol=1e-12)


def test_validate_metric_non_square():
    with pytest.raises(ValueError):
        validate_metric([[0, 1, 2]])


def test_finite_metric_space_json_roundtrip(tmp_path):
    space = FiniteMetricSpace(["a", "b"], [[0, 2], [2, 0]])
    path = tmp_path / "ms.json"
    space.dump(path)
    back = FiniteMetricSpace.load(path)
    assert back.labels == ("a", "b")
    assert np.array_equal(back.matrix, space.matrix)
    assert back.diameter == 2


def test_finite_metric_space_default_labels_and_checks():
    assert FiniteMetricSpace(None, [[0, 1], [1, 0]]).labels == (0, 1)
    with pytest.raises(ValueError):
        FiniteMetricSpace(["a"], [[0, 1], [1, 0]])
