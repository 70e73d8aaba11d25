import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ghembed.kuratowski import embed_finite_space, kuratowski_embed
from ghembed.metric import FiniteMetricSpace, pairwise_chebyshev
from ghembed.scaffold import Variant

THREE = [[0, 1, 2], [1, 0, 2], [2, 2, 0]]


def test_three_point_example():
    emb = kuratowski_embed(THREE)
    assert emb.images.tolist() == [[0, 0, 0], [1, -1, 0], [2, 1, -2]]
    assert pairwise_chebyshev(emb.images).tolist() == [[0, 1, 2], [1, 0, 2], [2, 2, 0]]


def test_small_examples():
    assert kuratowski_embed([[0]]).images.tolist() == [[0]]
    assert kuratowski_embed([[0, 3.5], [3.5, 0]]).images.tolist() == [[0, 0], [3.5, -3.5]]


def test_invalid_metric_rejected():
    with pytest.raises(ValueError, match="triangle"):
        kuratowski_embed([[0, 1, 3], [1, 0, 1], [3, 1, 0]])
    with pytest.raises(IndexError):
        kuratowski_embed(THREE, base_index=3)


metrics = st.integers(1, 12).flatmap(
    lambda n: st.lists(st.lists(st.integers(-40, 40), min_size=3, max_size=3), min_size=n, max_size=n)
).map(lambda rows: pairwise_chebyshev(np.array(rows, dtype=float) / 4))


@given(metrics, st.integers(0, 11))
def test_embedding_is_isometric_for_every_base(d, base):
    base %= len(d)
    emb = kuratowski_embed(d, base)
    assert np.max(np.abs(pairwise_chebyshev(emb.images) - d)) <= 1e-12
    assert np.all(np.abs(emb.images) <= d.max())
    # the base point lands on the origin
    assert np.all(emb.images[base] == 0)


def test_first_point_at_origin(rng):
    d = pairwise_chebyshev(rng.random((7, 3)))
    assert np.all(kuratowski_embed(d).images[0] == 0)


def test_embed_finite_three_points():
    res = embed_finite_space(FiniteMetricSpace(list("abc"), THREE))
    assert res.recovered.matrix.tolist() == THREE
    assert res.recovered.labels == ("a", "b", "c")
    assert len(res.scaffolds) == 3
    # translated images lie in [0, M]^3 with M at most twice the diameter
    assert res.bound <= 2 * 2


def test_embed_single_point():
    res = embed_finite_space([[0]])
    assert len(res.scaffolds) == 1
    assert res.recovered.matrix.tolist() == [[0]]
    assert res.bound == 1


@pytest.mark.parametrize("variant", list(Variant))
def test_random_roundtrip_on_quarter_grid(variant):
    rng = np.random.default_rng(7)
    for _ in range(10):
        d = pairwise_chebyshev(rng.integers(0, 20, (5, 3)) / 4)
        for base in range(5):
            res = embed_finite_space(d, variant, base)
            assert np.array_equal(res.recovered.matrix, d)
