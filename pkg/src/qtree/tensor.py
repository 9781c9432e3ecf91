"""Multi-leg tensors over algebra legs and function legs C(X^n).

A tensor is a tuple of leg algebras together with a map from key tuples
(one normalized monomial per leg) to rational coefficients.  Function
legs store basis projections p_w directly as the word w.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .engine import (
    Element,
    ReductionOutcome,
    SearchPolicy,
    _acc,
    canonicalize,
    prove_terms,
    reduce_terms,
    render_coefficient_term,
)
from .linalg import as_rational
from .words import Alphabet, enumerate_words, render_word


class FunctionLeg:
    """C(X^n) in the basis of minimal projections p_w, |w| = n."""

    kind = "function"

    def __init__(self, n: int, k: int):
        if n < 0:
            raise ValueError("function leg level must be non-negative")
        self.n = n
        self.k = Alphabet(k).size

    def __eq__(self, other):
        return isinstance(other, FunctionLeg) and (self.n, self.k) == (other.n, other.k)

    def __hash__(self):
        return hash((FunctionLeg, self.n, self.k))

    def __repr__(self):
        return f"FunctionLeg(n={self.n}, k={self.k})"

    def normalize(self, w):
        if len(w) != self.n:
            raise ValueError(f"p[{render_word(w)}] does not live in C(X^{self.n})")
        return tuple(w)

    def mul(self, w1, w2):
        return w1 if w1 == w2 else None

    def adjoint(self, w):
        return w

    def p(self, w) -> Element:
        w = tuple(w)
        Alphabet(self.k).check(w)
        return Element(self, {w: 1})

    def one(self) -> Element:
        return Element(self, {w: 1 for w in enumerate_words(self.k, self.n)}, normalized=True)

    def zero(self) -> Element:
        return Element(self, {}, normalized=True)

    def sort_key(self, w):
        return (0, w)

    def render(self, w) -> str:
        return f"p[{render_word(w)}]"

    def depth_of(self, w) -> int:
        return 0

    def generators_of(self, w):
        return iter(())


def include(m: int, n: int, f: Element) -> Element:
    """i_{m,n}: C(X^m) -> C(X^n), p_w -> sum of p_{ww'}."""
    leg = f.alg
    if not isinstance(leg, FunctionLeg) or leg.n != m or n < m:
        raise ValueError(f"i_{{{m},{n}}} needs an element of C(X^{m})")
    target = FunctionLeg(n, leg.k)
    tails = enumerate_words(leg.k, n - m)
    out: dict = {}
    for w, c in f.terms.items():
        for t in tails:
            _acc(out, w + t, c)
    return Element(target, out, normalized=True)


class TensorElement:
    """Rational linear combination of elementary tensors."""

    __slots__ = ("legs", "terms")

    def __init__(self, legs: Sequence, terms: dict | None = None, normalized: bool = False):
        self.legs = tuple(legs)
        if not self.legs:
            raise ValueError("a tensor needs at least one leg")
        if normalized:
            self.terms = terms if terms is not None else {}
        else:
            raw = terms or {}
            for key in raw:
                if len(key) != len(self.legs):
                    raise ValueError("term arity does not match the leg signature")
            self.terms = canonicalize(self.legs, raw)

    # -- constructors
    @classmethod
    def from_element(cls, e: Element) -> "TensorElement":
        return cls((e.alg,), {(m,): c for m, c in e.terms.items()}, normalized=True)

    @classmethod
    def pure(cls, *factors: Element) -> "TensorElement":
        out = cls.from_element(factors[0])
        for f in factors[1:]:
            out = out.tensor(cls.from_element(f))
        return out

    def to_element(self) -> Element:
        if len(self.legs) != 1:
            raise ValueError("only one-leg tensors convert to elements")
        return Element(self.legs[0], {key[0]: c for key, c in self.terms.items()}, normalized=True)

    # -- basics
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def _check(self, other: "TensorElement"):
        if self.legs != other.legs:
            raise ValueError(f"signature mismatch: {self.legs} vs {other.legs}")

    def sorted_terms(self):
        keys = [leg.sort_key for leg in self.legs]
        return sorted(self.terms.items(), key=lambda t: tuple(f(x) for f, x in zip(keys, t[0])))

    def __add__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            _acc(out, key, c)
        return TensorElement(self.legs, out, normalized=True)

    def __neg__(self):
        return TensorElement(self.legs, {key: -c for key, c in self.terms.items()}, normalized=True)

    def __sub__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        c = as_rational(c)
        if not c:
            return TensorElement(self.legs, {}, normalized=True)
        return TensorElement(self.legs, {key: as_rational(v * c) for key, v in self.terms.items()}, normalized=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TensorElement):
            return NotImplemented
        return multiply_pointwise(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.legs == other.legs and self.terms == other.terms

    def __hash__(self):
        return hash((self.legs, frozenset(self.terms.items())))

    def tensor(self, other: "TensorElement") -> "TensorElement":
        return tensor_product(self, other)

    def adjoint(self) -> "TensorElement":
        out: dict = {}
        for key, c in self.terms.items():
            nk = []
            for leg, item in zip(self.legs, key):
                ni = leg.adjoint(item)
                if ni is None:
                    break
                nk.append(ni)
            else:
                _acc(out, tuple(nk), c)
        return TensorElement(self.legs, out, normalized=True)

    def render(self) -> str:
        def key_text(key):
            return " ox ".join(leg.render(item) for leg, item in zip(self.legs, key))

        parts = [render_coefficient_term(c, key_text(key), i == 0) for i, (key, c) in enumerate(self.sorted_terms())]
        return "".join(parts) if parts else "0"

    __str__ = render

    def __repr__(self):
        return f"TensorElement({self.render()!r})"


def _as_tensor(x) -> TensorElement:
    if isinstance(x, TensorElement):
        return x
    if isinstance(x, Element):
        return TensorElement.from_element(x)
    raise TypeError(f"cannot treat {type(x).__name__} as a tensor")


def tensor_product(x, y) -> TensorElement:
    x, y = _as_tensor(x), _as_tensor(y)
    out: dict = {}
    for k1, c1 in x.terms.items():
        for k2, c2 in y.terms.items():
            out[k1 + k2] = c1 * c2
    return TensorElement(x.legs + y.legs, out, normalized=True)


def multiply_pointwise(x: TensorElement, y: TensorElement) -> TensorElement:
    x._check(y)
    legs = x.legs
    out: dict = {}
    for k1, c1 in x.terms.items():
        for k2, c2 in y.terms.items():
            nk = []
            for leg, i1, i2 in zip(legs, k1, k2):
                m = leg.mul(i1, i2)
                if m is None:
                    break
                nk.append(m)
            else:
                _acc(out, tuple(nk), c1 * c2)
    return TensorElement(legs, out, normalized=True)


def apply_on_legs(x: TensorElement, start: int, count: int, f: Callable, legs_out: Sequence | None = None) -> TensorElement:
    """Apply a linear map on the contiguous legs [start, start+count).

    f takes a key tuple of those legs and returns an Element or a
    TensorElement; the image legs replace the consumed ones.
    """
    if start < 0 or count < 1 or start + count > len(x.legs):
        raise ValueError("leg range out of bounds")
    cache: dict = {}
    out: dict = {}
    new_legs = None
    for key, c in x.terms.items():
        sub = key[start:start + count]
        img = cache.get(sub)
        if img is None:
            img = cache[sub] = _as_tensor(f(sub))
        if new_legs is None:
            new_legs = x.legs[:start] + img.legs + x.legs[start + count:]
        elif x.legs[:start] + img.legs + x.legs[start + count:] != new_legs:
            raise ValueError("leg map produced inconsistent signatures")
        pre, post = key[:start], key[start + count:]
        for ik, ic in img.terms.items():
            _acc(out, pre + ik + post, c * ic)
    if new_legs is None:
        if legs_out is None:
            return TensorElement(x.legs, {}, normalized=True)
        new_legs = x.legs[:start] + tuple(legs_out) + x.legs[start + count:]
    return TensorElement(new_legs, out, normalized=True)


def apply_on_leg(x: TensorElement, i: int, f: Callable, legs_out: Sequence | None = None) -> TensorElement:
    """Apply f (leg monomial -> Element or TensorElement) on leg i."""
    if not 0 <= i < len(x.legs):
        raise ValueError(f"leg index {i} out of range")
    return apply_on_legs(x, i, 1, lambda key: f(key[0]), legs_out)


def permute_legs(x: TensorElement, order: Sequence[int]) -> TensorElement:
    """Leg j of the result is leg order[j] of x."""
    order = tuple(order)
    if sorted(order) != list(range(len(x.legs))):
        raise ValueError(f"{order} is not a permutation of the legs")
    legs = tuple(x.legs[i] for i in order)
    out = {tuple(key[i] for i in order): c for key, c in x.terms.items()}
    return TensorElement(legs, out, normalized=True)


def reduce_tensor(x: TensorElement, budget=None) -> ReductionOutcome:
    out, cert, steps = reduce_terms(x.legs, dict(x.terms), budget)
    return ReductionOutcome(TensorElement(x.legs, out, normalized=True), cert, steps)


def prove_zero_tensor(x: TensorElement, strategy: SearchPolicy | None = None, extra=()) -> ReductionOutcome:
    extra_terms = [e.terms if isinstance(e, TensorElement) else e for e in extra]
    out, cert, steps = prove_terms(x.legs, dict(x.terms), strategy, extra_terms)
    return ReductionOutcome(TensorElement(x.legs, out, normalized=True), cert, steps)


def contract_leg(x: TensorElement, i: int, f: Callable) -> TensorElement:
    """Apply a scalar-valued linear map f on leg i, removing that leg."""
    if len(x.legs) < 2:
        raise ValueError("cannot contract the only leg")
    out: dict = {}
    for key, c in x.terms.items():
        s = f(key[i])
        if s:
            _acc(out, key[:i] + key[i + 1:], as_rational(c * s))
    return TensorElement(x.legs[:i] + x.legs[i + 1:], out, normalized=True)


def merge_legs(x: TensorElement, i: int) -> TensorElement:
    """Multiply legs i and i+1 (same algebra) into one leg."""
    if i + 1 >= len(x.legs) or x.legs[i] != x.legs[i + 1]:
        raise ValueError("can only merge adjacent legs of the same algebra")
    leg = x.legs[i]
    out: dict = {}
    for key, c in x.terms.items():
        m = leg.mul(key[i], key[i + 1])
        if m is not None:
            _acc(out, key[:i] + (m,) + key[i + 2:], c)
    return TensorElement(x.legs[:i + 1] + x.legs[i + 2:], out, normalized=True)
