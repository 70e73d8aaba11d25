import itertools
import xml.etree.ElementTree as ET

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ghembed.metric import chebyshev_distance, pairwise_chebyshev
from ghembed.scaffold import (
    Scaffold,
    ScaffoldParams,
    Variant,
    build_scaffold,
    covering_radius,
    normalize,
    sample_scaffold,
    sampling_radius,
    sparse_sample,
)
from ghembed.svg import render_svg

SVG = "{http://www.w3.org/2000/svg}"


def test_constants():
    p = ScaffoldParams(3, 2.0)
    assert (p.c, p.d) == (8.0, 20.0)
    for m in (0.5, 1.0, 7.0, 0.3):
        p = ScaffoldParams(1, m)
        assert p.c == 4 * m
        assert p.d == pytest.approx(10 * m, rel=1e-15)


def test_two_block_geometry(k12):
    assert k12.markers.tolist() == [[[0, 1], [0, -1]], [[20, 2], [20, -2]]]
    assert [(b.x0, b.x1, b.y0, b.y1) for b in k12.blocks] == [(8, 12, -2, 2), (28, 32, -2, 2)]


def test_zero_coordinate_collapses_marker_pair():
    k = build_scaffold([0], 1)
    assert k.markers[0, 0].tolist() == k.markers[0, 1].tolist() == [0, 0]
    assert len(k.marker_points()) == 1
    assert [(b.x0, b.x1, b.y0, b.y1) for b in k.blocks] == [(4, 6, -1, 1)]


def test_full_coordinate_touches_block_height():
    k = build_scaffold([3.5], 3.5)
    assert k.marker(1, "+").tolist() == [0, 3.5]
    assert k.marker(1, "-").tolist() == [0, -3.5]
    assert k.blocks[0].y1 == 3.5


@pytest.mark.parametrize("x, m", [([-0.1], 1), ([1.5], 1), ([0.5], 0), ([0.5], -1)])
def test_build_rejects_bad_input(x, m):
    with pytest.raises(ValueError):
        build_scaffold(x, m)


@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.integers(0, 64), min_size=n, max_size=n)))
def test_marker_ordinates_recover_x(levels):
    x = np.array(levels) / 32
    k = build_scaffold(x, 2)
    assert [k.marker(n, "+")[1] for n in range(1, k.dim + 1)] == list(x)


def test_square_diameter_and_vertices():
    for variant in Variant:
        k = build_scaffold([0.5, 1], 1.5, variant)
        for b in k.blocks:
            pts = b.extreme_points()
            assert pairwise_chebyshev(pts).max() == 3.0
            # any two distinct vertices are exactly 2M apart
            d = pairwise_chebyshev(pts)
            assert set(d[~np.eye(len(pts), dtype=bool)]) == {3.0}
    k = build_scaffold([1], 2)
    dense = k.blocks[0].sample(0.1)
    assert pairwise_chebyshev(dense).max() <= 4.0


def test_variant_point_sets():
    k = build_scaffold([1], 2, "three-points")
    assert k.blocks[0].extreme_points().tolist() == [[8, -2], [8, 2], [12, 0]]
    k = build_scaffold([1], 2, "four-corners")
    assert sorted(map(tuple, k.blocks[0].extreme_points())) == [(8, -2), (8, 2), (12, -2), (12, 2)]


def test_block_distance_variants():
    full = build_scaffold([1], 2).blocks[0]
    frame = build_scaffold([1], 2, "frame").blocks[0]
    three = build_scaffold([1], 2, "three-points").blocks[0]
    centre = (10, 0)
    assert full.distance(centre) == 0
    assert frame.distance(centre) == 2
    assert three.distance(centre) == 2
    assert frame.distance((9, 0.5)) == 1
    for b in (full, frame, three):
        assert b.distance((0, 0)) == 8
        assert b.distance((20, 1)) == 8


def test_block_distance_matches_dense_sampling():
    rng = np.random.default_rng(3)
    for variant in Variant:
        block = build_scaffold([1], 2, variant).blocks[0]
        dense = block.sample(0.01)
        for p in rng.uniform([-2, -5], [22, 5], size=(30, 2)):
            sampled = np.max(np.abs(dense - p), axis=1).min()
            assert block.distance(p) <= sampled + 1e-12
            assert sampled <= block.distance(p) + 0.005 + 1e-12


def test_normalize_examples():
    pts, m = normalize([[3, 5], [4, 7]])
    assert pts.tolist() == [[0, 0], [1, 2]] and m == 2
    pts, m = normalize([[0, 0]])
    assert pts.tolist() == [[0, 0]] and m == 1
    pts, m = normalize([[0, 0], [0, 1.25]])
    assert pts.tolist() == [[0, 0], [0, 1.25]] and m == 1.25
    with pytest.raises(ValueError):
        normalize(np.empty((0, 2)))


@given(st.lists(st.lists(st.integers(-1000, 1000), min_size=3, max_size=3), min_size=1, max_size=8))
def test_normalize_preserves_chebyshev_distances(rows):
    a = np.array(rows, dtype=float) / 8
    b, m = normalize(a)
    assert np.array_equal(pairwise_chebyshev(a), pairwise_chebyshev(b))
    assert b.min() >= 0 and b.max() <= m


def _probe(k, step):
    """Independent fine probe of the scaffold: markers plus a regular grid of each block."""
    pts = [k.markers.reshape(-1, 2)]
    for b in k.blocks:
        xs = np.arange(b.x0, b.x1 + step / 2, step)
        ys = np.arange(b.y0, b.y1 + step / 2, step)
        grid = np.array(list(itertools.product(xs, ys)))
        pts.append(grid[[b.contains(p, 1e-9) for p in grid]])
    return np.vstack(pts)


@pytest.mark.parametrize("variant", list(Variant))
@pytest.mark.parametrize("eps", [2.0, 1.0, 0.3, 0.25])
def test_sample_covering_radius(variant, eps):
    k = build_scaffold([1, 2, 0.5], 2, variant)
    sample = sample_scaffold(k, eps)
    probe = _probe(k, eps / 10)
    reach = np.max(np.abs(probe[:, None] - sample[None]), axis=-1).min(axis=1).max()
    assert reach <= eps
    assert reach <= sampling_radius(k, eps) + 1e-12
    for p in k.markers.reshape(-1, 2):
        assert np.any(np.all(sample == p, axis=1))
    for b in k.blocks:
        for corner in b.extreme_points():
            assert np.any(np.all(sample == corner, axis=1))


def test_full_square_sample_at_eps_m():
    k = build_scaffold([1], 2)
    sample = sample_scaffold(k, 2.0)
    probe = _probe(k, 0.2)
    assert np.max(np.abs(probe[:, None] - sample[None]), axis=-1).min(axis=1).max() <= 2.0


def test_sample_rejects_bad_eps(k12):
    with pytest.raises(ValueError):
        sample_scaffold(k12, 0)


def test_coarse_limit_finite_variants():
    k = build_scaffold([1, 2], 2, "three-points")
    sample = sample_scaffold(k, 1e6)
    assert len(sample) == 4 + 6
    assert sampling_radius(k, 1e6) == 0


def test_sparse_sample_and_covering_radius():
    k = build_scaffold([1, 2], 2)
    s = sparse_sample(k, 5)
    assert len(s) == 5
    kinds = [k.classify(p) for p in s]
    assert {c[1] for c in kinds if c[0] == "block"} == {1, 2}
    r = covering_radius(k, s, 0.05)
    # marker p_2^- is missing: covering radius at least its gap 2 * x_2 to p_2^+
    assert r >= 4
    full = build_scaffold([1], 2, "three-points")
    s = sparse_sample(full, 5)
    assert len(s) == 5 and covering_radius(full, s, 0.1) == 0


def test_classify(k12):
    assert k12.classify((0, -1)) == ("marker", 1, "-")
    assert k12.classify((30, 1)) == ("block", 2, None)
    with pytest.raises(ValueError):
        k12.classify((5, 0))


def test_json_roundtrip(tmp_path, k12):
    d = k12.to_dict()
    assert d == {"dim": 2, "M": 2.0, "C": 8.0, "D": 20.0, "variant": "full-square", "x": [1.0, 2.0]}
    path = tmp_path / "s.json"
    k12.dump(path)
    assert Scaffold.load(path) == k12
    with pytest.raises(ValueError):
        Scaffold.from_dict({**d, "C": 9})
    with pytest.raises(ValueError):
        Scaffold.from_dict({**d, "variant": "circle"})


def _rects(svg):
    root = ET.fromstring(svg)
    return [r for r in root.iter(SVG + "rect")], [c for c in root.iter(SVG + "circle")]


def test_svg_two_blocks(k12):
    svg = render_svg(k12)
    rects, circles = _rects(svg.encode())
    extents = sorted((float(r.get("x")), float(r.get("x")) + float(r.get("width"))) for r in rects)
    assert extents == [(8, 12), (28, 32)]
    markers = sorted((float(c.get("cx")), float(c.get("cy"))) for c in circles if c.get("class") == "marker")
    assert markers == [(0, -1), (0, 1), (20, -2), (20, 2)]
    assert "C=8" in svg and "C+D(1)=28" in svg


def test_svg_single_block_and_determinism():
    k = build_scaffold([0], 1)
    rects, circles = _rects(render_svg(k).encode())
    assert len(rects) == 1
    assert len([c for c in circles if c.get("class") == "marker"]) == 1
    assert render_svg(build_scaffold([0.5, 1], 1)) == render_svg(build_scaffold([0.5, 1], 1))


def test_svg_variants_draw_points():
    k = build_scaffold([1], 2, "three-points")
    _, circles = _rects(render_svg(k).encode())
    assert len([c for c in circles if c.get("class") == "block-point"]) == 3
