import pytest
from hypothesis import given, strategies as st

from conftest import aut_points
from qtree.classical import (Portrait, act, aut_order, closure_violations, compose, enumerate_aut, enumerate_GP,
                             gp_order, identity, indicator_span_rank, invert, preset_subgroup, section,
                             verify_abelianization, verify_duality, verify_gp_counts)
from qtree.words import enumerate_words

points = st.sampled_from(aut_points(2, 3))
words3 = st.tuples(*[st.integers(0, 1)] * 3)


@pytest.mark.parametrize("k,d,n", [(2, 1, 2), (2, 2, 8), (2, 3, 128), (3, 1, 6), (3, 2, 1296)])
def test_enumeration_matches_wreath_recursion(k, d, n):
    assert aut_order(k, d) == n
    assert len(enumerate_aut(k, d)) == n


def test_depth_four_order():
    assert aut_order(2, 4) == 32768


@given(points, points, words3)
def test_composition_is_an_action(g, h, w):
    assert act(compose(g, h), w) == act(g, act(h, w))


@given(points, words3)
def test_inverse(g, w):
    assert act(invert(g), act(g, w)) == w
    assert compose(g, invert(g)) == identity(2, 3)


@given(points, points, st.integers(0, 1))
def test_section_of_product(g, h, x):
    hx = act(h, (x,))
    assert section(compose(g, h), (x,)) == compose(section(g, hx), section(h, (x,)))


@given(points)
def test_portrait_json_roundtrip(g):
    assert Portrait.from_json(2, 3, g.to_json()) == g


def test_presets_and_gp_orders():
    assert len(preset_subgroup("trivial", 3).elements) == 1
    assert len(preset_subgroup("cyclic", 4).elements) == 4
    assert len(preset_subgroup("klein", 4).elements) == 4
    assert len(preset_subgroup("full", 3).elements) == 6
    with pytest.raises(ValueError):
        preset_subgroup("klein", 3)
    P = preset_subgroup("cyclic", 3)
    assert [gp_order(P, n) for n in (1, 2)] == [3, 81]
    assert [len(enumerate_GP(preset_subgroup("full", 2), n)) for n in (1, 2, 3)] == [2, 8, 128]
    assert [len(enumerate_GP(preset_subgroup("trivial", 2), n)) for n in (1, 2, 3)] == [1, 1, 1]


def test_gp_is_closed():
    P = preset_subgroup("cyclic", 3)
    G2 = enumerate_GP(P, 2)
    assert not any(closure_violations(G2, enumerate_GP(P, 1)).values())


def test_closure_detects_a_non_group():
    G = enumerate_aut(2, 2)
    broken = [g for g in G if g != G[-1]]
    assert any(closure_violations(broken).values())


def test_indicator_rank_equals_order():
    for d in (1, 2, 3):
        assert indicator_span_rank(enumerate_aut(2, d), d) == aut_order(2, d)


def test_reports_pass():
    assert verify_abelianization(2, 2).passed
    assert verify_duality(2, 2, pairs=False).passed
    assert verify_gp_counts(preset_subgroup("cyclic", 3), 2).passed


def test_actions_preserve_levels():
    g = enumerate_aut(3, 2)[17]
    assert sorted(act(g, w) for w in enumerate_words(3, 2)) == enumerate_words(3, 2)
