import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from conftest import aut_points, elements, monomials, tp_rep
from qtree.classical import abelian_eval
from qtree.engine import (Certificate, ReductionBudget, SearchPolicy, TreeAlgebra, adjoint, parse, prove_zero,
                          reduce, refine)
from qtree.reps import numeric_eval, op_norm, refute, default_reps
from qtree.syntax import ParseError
from qtree.words import words_upto

K2 = TreeAlgebra(2)
K3 = TreeAlgebra(3)


def red(text, k=2):
    return reduce(parse(text, k))


def test_worked_reductions():
    out = red("a[0,1]*a[0,1]")
    assert out.result.render() == "a[0,1]" and out.certificate is Certificate.IRREDUCIBLE
    assert red("a[0,1]*a[1,1]").certificate is Certificate.PROVED_ZERO
    assert red("a[00,10] + a[00,11]").result.render() == "a[0,1]"
    assert red("a[0,0]*a[00,11]").certificate is Certificate.PROVED_ZERO
    assert red("a[0,0]*a[00,01]").result.render() == "a[00,01]"
    assert red("a[e,e] - 1").certificate is Certificate.PROVED_ZERO
    assert red("a[0,0] + a[0,1] + a[0,2] - 1", 3).certificate is Certificate.PROVED_ZERO


def test_false_sum_is_not_reduced_and_is_refuted():
    # a[00,10] + a[01,11] is not a child sum; a classical point separates it from a[0,1]
    lhs, rhs = parse("a[00,10] + a[01,11]", 2), parse("a[0,1]", 2)
    assert not prove_zero(lhs - rhs).proved_zero
    assert any(abelian_eval(lhs - rhs, g) != 0 for g in aut_points(2, 2))
    assert refute(lhs, rhs, default_reps(2, 2)) == "refuted"


def test_pair_rule_matches_oracle_exhaustively():
    """Every product of two generators (k=2, depth <= 2): normal form agrees with all points and a rep."""
    gens = [(u, v) for n in (1, 2) for u in words_upto(2, n) if len(u) == n for v in words_upto(2, n) if len(v) == n]
    pts = aut_points(2, 2)
    rep = tp_rep()
    for (p, q), (u, v) in itertools.product(gens, repeat=2):
        x = K2.gen(p, q) * K2.gen(u, v)
        raw = numeric_eval(K2.gen(p, q), rep) @ numeric_eval(K2.gen(u, v), rep)
        assert op_norm(numeric_eval(x, rep) - raw) < 1e-10
        for g in pts:
            assert abelian_eval(x, g) == abelian_eval(K2.gen(p, q), g) * abelian_eval(K2.gen(u, v), g)


def test_linear_closure_needs_backwards_relations():
    out = prove_zero(parse("a[0,0] - a[1,1]", 2))
    assert out.proved_zero
    assert not prove_zero(parse("a[0,0] - a[0,1]", 2)).proved_zero


@pytest.mark.parametrize("text", [
    "a[00,00]*a[10,10] - a[10,10]*a[00,00]",   # depth-2 entries need not commute
    "a[00,01]*a[10,10] - a[10,10]*a[00,01]",
    "a[00,00] + a[01,01] - a[0,0]",            # not a child sum
])
def test_false_identities_never_certified(text):
    x = parse(text, 2)
    out = prove_zero(x)
    assert not out.proved_zero
    assert refute(x, K2.zero(), default_reps(2, 2)) == "refuted"


def test_depth_one_entries_commute_for_small_k_but_are_not_rewritten():
    # true at k <= 3 since the depth-1 block is a classical permutation matrix there
    x = parse("a[0,0]*a[1,1] - a[1,1]*a[0,0]", 3)
    assert refute(x, K3.zero(), default_reps(3, 2)) == "inconclusive"


def test_budget_exhaustion_is_reported():
    x = parse("a[0,0]*a[1,1]*a[0,0] - a[0,0]*a[1,1]", 3)
    out = reduce(x, ReductionBudget(1))
    assert out.certificate in (Certificate.BUDGET_EXHAUSTED, Certificate.IRREDUCIBLE)
    tiny = SearchPolicy(budget=ReductionBudget(1), max_vectors=1)
    assert prove_zero(parse("a[0,0] - a[1,1]", 2), tiny).certificate is Certificate.BUDGET_EXHAUSTED


def test_refine_is_the_averaged_descendant_sum():
    x = refine(parse("a[0,1]", 2), 2)
    assert x == parse("a[00,10] + a[00,11] + a[01,10] + a[01,11]", 2).scale(Fraction(1, 2))
    assert prove_zero(x - parse("a[0,1]", 2)).proved_zero
    one = refine(K2.one(), 1)
    assert prove_zero(one - K2.one()).proved_zero


def test_adjoint_reverses_products():
    x = parse("2*a[0,1]*a[10,00] - a[1,1]", 2)
    assert adjoint(x) == parse("2*a[10,00]*a[0,1] - a[1,1]", 2)
    assert adjoint(adjoint(x)) == x


@pytest.mark.parametrize("text", ["a[0,1", "a[0,1]*", "a[01,1]", "a[0,5]", "b[0,1]"])
def test_parse_errors(text):
    with pytest.raises((ParseError, ValueError)):
        parse(text, 2)


# -- properties


@given(elements())
def test_reduce_preserves_classical_values(x):
    y = reduce(x).result
    for g in aut_points(2, 2):
        assert abelian_eval(x, g) == abelian_eval(y, g)


@given(elements(max_degree=2))
def test_reduce_preserves_matrix_values(x):
    rep = tp_rep()
    y = reduce(x).result
    assert op_norm(numeric_eval(x, rep) - numeric_eval(y, rep)) < 1e-9


@given(elements())
def test_reduce_is_idempotent(x):
    y = reduce(x).result
    assert reduce(y).result == y


@given(monomials(), monomials(), monomials())
def test_normalized_product_is_associative(x, y, z):
    assert (x * y) * z == x * (y * z)


@given(elements(max_degree=2), elements(max_degree=2))
def test_adjoint_is_antimultiplicative(x, y):
    assert adjoint(x * y) == adjoint(y) * adjoint(x)


@given(elements())
def test_certified_zero_is_classically_zero(x):
    if prove_zero(x).proved_zero:
        assert all(abelian_eval(x, g) == 0 for g in aut_points(2, 2))
        assert op_norm(numeric_eval(x, tp_rep())) < 1e-9


def test_projection_images_are_projections():
    rep = tp_rep()
    for u in words_upto(2, 2):
        for v in words_upto(2, 2):
            if len(u) == len(v) and u:
                m = numeric_eval(K2.gen(u, v), rep)
                assert np.allclose(m @ m, m) and np.allclose(m, m.conj().T)
