import math

import numpy as np
import pytest

from qtree.classical import enumerate_aut, enumerate_GP, preset_subgroup
from qtree.engine import Gen, TreeAlgebra, parse
from qtree.reps import (classical_rep, convolve, default_reps, numeric_eval, op_norm, random_tree_rep, refute,
                        relation_report, two_projection_rep)

K2 = TreeAlgebra(2)


def commutator_norm(rep, a, b):
    x, y = rep.gen(Gen(*a)), rep.gen(Gen(*b))
    return op_norm(x @ y - y @ x)


def test_two_projection_relations_and_witness():
    rep = two_projection_rep(math.pi / 4, 3)
    report = relation_report(rep, 3)
    assert report.passed and report.max_residual < 1e-10
    assert abs(commutator_norm(rep, ((0, 0), (0, 0)), ((1, 0), (1, 0))) - 0.5) < 1e-10


@pytest.mark.parametrize("theta", [0.3, 0.7, 1.1])
def test_commutator_norm_follows_angle(theta):
    rep = two_projection_rep(theta, 2)
    expect = abs(math.cos(theta) * math.sin(theta))
    assert abs(commutator_norm(rep, ((0, 0), (0, 0)), ((1, 0), (1, 0))) - expect) < 1e-10


def test_degenerate_angle_rejected():
    with pytest.raises(ValueError):
        two_projection_rep(0.0, 2)
    assert relation_report(two_projection_rep(0.0, 2, allow_degenerate=True), 2).passed


def test_generalized_to_larger_alphabets():
    for k in (3, 4):
        assert relation_report(two_projection_rep(0.7, 2, k), 2).passed


def test_classical_rep_is_commutative():
    rep = classical_rep(enumerate_GP(preset_subgroup("cyclic", 3), 2), 2)
    assert relation_report(rep, 2).passed
    x, y = rep.gen(Gen((0, 0), (1, 1))), rep.gen(Gen((1, 2), (2, 0)))
    assert np.allclose(x @ y, y @ x)


def test_random_and_convolved_reps():
    r2 = random_tree_rep(3, 2, 2, seed=4)
    r3 = random_tree_rep(2, 3, 2, seed=5)
    assert relation_report(r2, 2).passed and relation_report(r3, 3).passed
    root = classical_rep(enumerate_aut(2, 1), extend=True)
    assert relation_report(convolve(root, random_tree_rep(2, 2, 2, seed=1)), 2).passed


def test_random_rep_is_seeded():
    a, b = random_tree_rep(2, 2, 2, seed=8), random_tree_rep(2, 2, 2, seed=8)
    assert np.array_equal(a.gen(Gen((0, 1), (1, 0))), b.gen(Gen((0, 1), (1, 0))))


def test_numeric_eval_of_relation_is_zero():
    rep = two_projection_rep(0.7, 2)
    x = parse("a[00,10] + a[00,11] - a[0,1]", 2)
    assert op_norm(numeric_eval(x, rep)) < 1e-12


def test_refute():
    reps = default_reps(2, 2)
    assert refute(parse("a[00,00]*a[10,10]", 2), parse("a[10,10]*a[00,00]", 2), reps) == "refuted"
    assert refute(parse("a[0,0]", 2), parse("a[1,1]", 2), reps) == "inconclusive"


def test_report_json_shape():
    d = relation_report(two_projection_rep(0.7, 2), 2).to_dict()
    assert set(d) >= {"provenance", "depth", "tol", "residuals", "max_residual", "pass"}
