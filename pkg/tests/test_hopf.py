import random

from hypothesis import given, strategies as st

from conftest import aut_points, elements
from qtree.classical import abelian_eval, compose, invert, tensor_eval, identity
from qtree.engine import TreeAlgebra, parse, prove_zero
from qtree.hopf import (antipode, counit, delta, delta_on_leg, gamma, random_monomials, verify_coaction,
                        verify_cqg_axioms, verify_hopf_laws)
from qtree.tensor import FunctionLeg, apply_on_leg, prove_zero_tensor

K2 = TreeAlgebra(2)
points = st.sampled_from(aut_points(2, 2))


def test_delta_of_a_generator_is_matrix_product():
    d = delta(parse("a[0,1]", 2))
    assert d.render() == "a[0,0] ox a[0,1] + a[0,1] ox a[1,1]"


def test_counit_and_antipode_on_generators():
    assert counit(parse("a[01,01]", 2)) == 1
    assert counit(parse("a[01,00]", 2)) == 0
    assert antipode(parse("a[01,10]", 2)) == parse("a[10,01]", 2)
    assert antipode(parse("a[0,1]*a[10,11]", 2)) == parse("a[11,10]*a[1,0]", 2)


@given(elements(max_degree=2), points, points)
def test_delta_dualizes_composition(x, g, h):
    assert tensor_eval(delta(x), (g, h)) == abelian_eval(x, compose(g, h))


@given(elements(), points)
def test_antipode_dualizes_inversion(x, g):
    assert abelian_eval(antipode(x), g) == abelian_eval(x, invert(g))


@given(elements())
def test_counit_is_evaluation_at_identity(x):
    assert counit(x) == abelian_eval(x, identity(2, 2))


@given(elements(max_degree=2), elements(max_degree=2))
def test_delta_is_multiplicative(x, y):
    assert prove_zero_tensor(delta(x * y) - delta(x) * delta(y)).proved_zero


def test_coassociativity_on_random_monomials():
    for x in random_monomials(K2, 3, 2, 3, 10):
        dx = delta(x)
        assert prove_zero_tensor(delta_on_leg(dx, 0) - delta_on_leg(dx, 1)).proved_zero


def test_gamma_is_an_action():
    F = FunctionLeg(2, 2)
    g = gamma(2, F.p((0, 1)), K2)
    lhs = delta_on_leg(g, 0)
    rhs = apply_on_leg(g, 1, lambda z: gamma(2, F.p(z), K2), (K2, F))
    assert prove_zero_tensor(lhs - rhs).proved_zero


def test_suites_pass_small():
    assert verify_cqg_axioms(2, 2, 2, seed=1, samples=20).passed
    assert verify_hopf_laws(2, 2, seed=1, samples=10).passed
    assert verify_coaction(2, 2).passed


def test_random_monomials_are_seeded():
    a = random_monomials(K2, 5, 2, 2, 8)
    b = random_monomials(K2, 5, 2, 2, 8)
    assert a == b and all(not m.is_zero() for m in a)
    assert prove_zero(antipode(antipode(a[0])) - a[0]).proved_zero


def test_random_module_unaffected():
    state = random.getstate()
    random_monomials(K2, 0, 2, 2, 3)
    assert random.getstate() == state
