import pytest

from qtree.engine import TreeAlgebra, parse
from qtree.syntax import parse_tensor
from qtree.tensor import (FunctionLeg, TensorElement, include, merge_legs, multiply_pointwise, permute_legs,
                          prove_zero_tensor, tensor_product)

K2 = TreeAlgebra(2)


def test_function_leg_is_commutative_and_idempotent():
    F = FunctionLeg(2, 2)
    assert F.p((0, 1)) * F.p((0, 1)) == F.p((0, 1))
    assert (F.p((0, 1)) * F.p((1, 1))).is_zero()
    total = F.zero()
    for w in [(0, 0), (0, 1), (1, 0), (1, 1)]:
        total = total + F.p(w)
    assert total == F.one()


def test_inclusion_sums_over_extensions():
    F1, F2 = FunctionLeg(1, 2), FunctionLeg(2, 2)
    assert include(1, 2, F1.p((1,))) == F2.p((1, 0)) + F2.p((1, 1))
    assert include(1, 2, F1.one()) == F2.one()


def test_legwise_product_and_bilinearity():
    a, b = K2.gen((0,), (1,)), K2.gen((1,), (1,))
    t = tensor_product(a, b) + tensor_product(b, a)
    sq = t * t
    assert sq == tensor_product(a, b) + tensor_product(b, a)  # cross terms vanish by orthogonality
    assert tensor_product(a + b, a) == tensor_product(a, a) + tensor_product(b, a)


def test_permute_and_merge_legs():
    a, b = K2.gen((0,), (1,)), K2.gen((1,), (0,))
    t = TensorElement.pure(a, b)
    assert permute_legs(t, (1, 0)) == TensorElement.pure(b, a)
    assert merge_legs(t, 0).to_element() == a * b


def test_pointwise_product_with_function_leg():
    F = FunctionLeg(1, 2)
    a = K2.gen((0,), (0,))
    x = multiply_pointwise(tensor_product(a, F.p((0,))), tensor_product(K2.one(), F.one()))
    assert x == tensor_product(a, F.p((0,)))


def test_tensor_zero_certificate():
    # (a[0,0] + a[0,1]) (x) a[1,1] - 1 (x) a[1,1] = 0
    x = tensor_product(parse("a[0,0] + a[0,1]", 2), K2.gen((1,), (1,))) - tensor_product(K2.one(), K2.gen((1,), (1,)))
    assert prove_zero_tensor(x).proved_zero
    y = tensor_product(K2.gen((0,), (0,)), K2.one()) - tensor_product(K2.one(), K2.gen((0,), (0,)))
    assert not prove_zero_tensor(y).proved_zero


def test_parse_tensor_roundtrip():
    t = parse_tensor("a[0,1] ox a[1,1] + 2 * a[00,01] ox 1", K2)
    assert parse_tensor(t.render(), K2) == t


def test_mismatched_legs_rejected():
    F = FunctionLeg(1, 2)
    with pytest.raises((TypeError, ValueError)):
        tensor_product(K2.one(), K2.one()) + tensor_product(K2.one(), F.one())
