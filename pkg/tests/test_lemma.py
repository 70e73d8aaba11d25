import pytest

from ghembed.lemma import (
    LemmaCase,
    LemmaItem,
    block_block_distance,
    block_block_upper,
    certify_lemma,
    constant_relations,
    cross_marker_distance,
    iter_lemma_cases,
    marker_block_distance,
    marker_pair_distance,
    marker_prevblock_upper,
    verify_lemma_case,
)
from ghembed.scaffold import Variant, build_scaffold


@pytest.fixture
def k3():
    return build_scaffold([1, 2, 0.5], 2)


def test_marker_pair(k12):
    assert marker_pair_distance(k12, 2) == 4
    assert marker_pair_distance(build_scaffold([0], 2), 1) == 0
    assert marker_pair_distance(build_scaffold([2], 2), 1) == 4  # bound 2M attained
    with pytest.raises(IndexError):
        marker_pair_distance(k12, 3)


def test_cross_marker(k3):
    for s in "+-":
        for t in "+-":
            assert cross_marker_distance(k3, 1, 2, s, t) == 20
    assert cross_marker_distance(k3, 1, 3) == 40
    with pytest.raises(ValueError):
        cross_marker_distance(k3, 2, 2)


def test_marker_block(k12):
    assert marker_block_distance(k12, 1, 1) == 8
    assert marker_block_distance(k12, 1, 2) == 28
    assert marker_block_distance(k12, 2, 1) == 8


def test_block_block(k3):
    assert block_block_distance(k3, 1, 2) == 16
    assert block_block_distance(k3, 1, 3) == 36
    assert block_block_distance(k3, 3, 1) == block_block_distance(k3, 1, 3)
    with pytest.raises(ValueError):
        block_block_distance(k3, 1, 1)


def test_upper_bounds(k3):
    assert block_block_upper(k3, 2, 2) == 4
    assert block_block_upper(k3, 1, 2) == 24
    assert marker_prevblock_upper(k3, 2) == 12
    with pytest.raises(ValueError):
        marker_prevblock_upper(k3, 1)


def test_prevblock_bound_attained_at_left_edge(k12):
    check = verify_lemma_case(LemmaCase(LemmaItem.L5, 2, 1, "+"), k12, 0.25)
    assert check.sampled == 12
    marker, at = check.witness
    assert marker == (20, 2) and at[0] == 8


def test_corner_pairs_attain_block_upper(k12):
    import numpy as np

    a, b = k12.blocks
    d = np.max(np.abs(a.extreme_points()[:, None] - b.extreme_points()[None]), axis=-1)
    assert d.max() == block_block_upper(k12, 1, 2)


def test_marker_only_cases_exact(k3):
    for case in iter_lemma_cases(3):
        if LemmaItem(case.item).marker_only:
            check = verify_lemma_case(case, k3)
            assert check.sampled == check.closed_form and check.agree


def test_grid_overshoot_ranges(k12):
    c = verify_lemma_case(LemmaCase(LemmaItem.L3, 1, 2), k12, 0.25)
    assert 15.75 <= c.sampled <= 16 + 0.25 and c.closed_form == 16 and c.agree
    c = verify_lemma_case(LemmaCase(LemmaItem.L2_1, 1, 1, "-"), k12, 0.25)
    assert 8 <= c.sampled <= 8.25 and c.agree


def test_off_grid_marker_still_within_resolution():
    k = build_scaffold([0.3], 1.0)
    c = verify_lemma_case(LemmaCase(LemmaItem.L2_1, 1, 1), k, 0.3)
    assert c.agree


def test_inapplicable_cases_rejected(k12):
    for case in (
        LemmaCase(LemmaItem.L1_2, 1, 1),
        LemmaCase(LemmaItem.L2_1, 2, 1),
        LemmaCase(LemmaItem.L2_2, 1, 2),
        LemmaCase(LemmaItem.L3, 2, 2),
        LemmaCase(LemmaItem.L5, 1, 0),
        LemmaCase(LemmaItem.L4, 1, 3),
    ):
        with pytest.raises(ValueError):
            verify_lemma_case(case, k12)


def test_case_enumeration_counts():
    cases = list(iter_lemma_cases(3))
    by_item = {item: sum(1 for c in cases if c.item is item) for item in LemmaItem}
    assert by_item == {
        LemmaItem.L1_1: 3,
        LemmaItem.L1_2: 6 * 4,
        LemmaItem.L2_1: 6 * 2,
        LemmaItem.L2_2: 3 * 2,
        LemmaItem.L3: 6,
        LemmaItem.L4: 9,
        LemmaItem.L5: 2 * 2,
    }


@pytest.mark.parametrize("m", [0.5, 1, 2, 7, 0.3])
def test_constant_relations(m):
    assert all(holds for _, holds in constant_relations(m))


@pytest.mark.parametrize("variant", list(Variant))
def test_lemma_holds_for_every_variant(variant):
    cert = certify_lemma(dims=(1, 2, 3), bounds=(1.0,), variant=variant, x_step=0.5)
    assert cert.passed, cert.failures[:3]
