"""Expression parser for elements, tensors and wreath elements.

Grammar (whitespace insignificant):

    expr    := ['+'|'-'] oxterm (('+'|'-') oxterm)*
    oxterm  := product ('ox' product)*
    product := factor ('*' factor)*
    factor  := rational | 'a[' word ',' word ']' | 'p[' word ']'
             | 'P[' letter ',' letter ']' | 'N[' letter '](' expr ')'
             | '(' expr ')'
    word    := 'e' | digit+
    rational:= integer ['/' positive-integer]

A bare rational stands for that multiple of the unit.  `ox` binds looser
than `*` and tighter than `+`.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .engine import Element, TreeAlgebra
from .linalg import as_rational
from .tensor import FunctionLeg, TensorElement, tensor_product
from .words import EMPTY

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]+)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos


def _tokenize(text: str):
    out = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        num, ident, sym = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(("num", num, start))
        elif ident is not None:
            out.append(("id", ident, start))
        else:
            out.append(("sym", sym, start))
        pos = m.end()
    if text[pos:].strip():
        raise ParseError("unexpected input", pos, text)
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, alg: TreeAlgebra, wreath=None):
        self.text = text
        self.alg = alg
        self.wreath = wreath
        self.toks = _tokenize(text)
        self.i = 0

    # -- token helpers
    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, message: str, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok[2], self.text)

    def expect(self, sym: str):
        tok = self.take()
        if tok[1] != sym or tok[0] == "num":
            self.fail(f"expected {sym!r}", tok)
        return tok

    # -- values: numbers, Elements (any single-leg algebra) or TensorElements
    def _unit_like(self, value, like):
        if isinstance(like, TensorElement):
            raise_tok = self.peek()
            self.fail("scalar cannot be combined with a tensor by +", raise_tok)
        return like.alg.one().scale(value)

    def _add(self, x, y, tok):
        if isinstance(x, (int, Fraction)) and isinstance(y, (int, Fraction)):
            return as_rational(x + y)
        if isinstance(x, (int, Fraction)):
            x = self._unit_like(x, y)
        if isinstance(y, (int, Fraction)):
            y = self._unit_like(y, x)
        if isinstance(x, Element) and isinstance(y, Element):
            if x.alg != y.alg:
                self.fail("sum of elements from different algebras", tok)
            return x + y
        x = x if isinstance(x, TensorElement) else TensorElement.from_element(x)
        y = y if isinstance(y, TensorElement) else TensorElement.from_element(y)
        if x.legs != y.legs:
            self.fail("sum of tensors with different leg signatures", tok)
        return x + y

    def _mul(self, x, y, tok):
        if isinstance(x, (int, Fraction)) and isinstance(y, (int, Fraction)):
            return as_rational(Fraction(x) * y)
        if isinstance(x, (int, Fraction)):
            return y.scale(x)
        if isinstance(y, (int, Fraction)):
            return x.scale(y)
        if isinstance(x, Element) and isinstance(y, Element):
            if x.alg != y.alg:
                self.fail("product of elements from different algebras", tok)
            return x * y
        if isinstance(x, TensorElement) and isinstance(y, TensorElement):
            if x.legs != y.legs:
                self.fail("product of tensors with different leg signatures", tok)
            return x * y
        self.fail("product of a tensor with a single-leg element", tok)

    # -- grammar
    def parse(self):
        value = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected token")
        return value

    def expr(self):
        sign = 1
        tok = self.peek()
        if tok[0] == "sym" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        value = self.oxterm()
        if sign < 0:
            value = -value
        while True:
            tok = self.peek()
            if tok[0] == "sym" and tok[1] in "+-":
                self.take()
                rhs = self.oxterm()
                value = self._add(value, rhs if tok[1] == "+" else -rhs, tok)
            else:
                return value

    def oxterm(self):
        value = self.product()
        while self.peek()[:2] == ("id", "ox"):
            self.take()
            rhs = self.product()
            value = tensor_product(self._as_leg(value), self._as_leg(rhs))
        return value

    def _as_leg(self, value):
        if isinstance(value, (int, Fraction)):
            return self.alg.one().scale(value)
        return value

    def product(self):
        value = self.factor()
        while self.peek()[:2] == ("sym", "*"):
            tok = self.take()
            value = self._mul(value, self.factor(), tok)
        return value

    def factor(self):
        tok = self.peek()
        kind, val, _ = tok
        if kind == "num":
            return self.rational()
        if kind == "sym" and val == "(":
            self.take()
            value = self.expr()
            self.expect(")")
            return value
        if kind == "id" and val == "a":
            self.take()
            self.expect("[")
            u = self.word()
            self.expect(",")
            v = self.word()
            self.expect("]")
            try:
                return self.alg.gen(u, v)
            except ValueError as exc:
                self.fail(str(exc), tok)
        if kind == "id" and val == "p":
            self.take()
            self.expect("[")
            w = self.word()
            self.expect("]")
            try:
                return FunctionLeg(len(w), self.alg.k).p(w)
            except ValueError as exc:
                self.fail(str(exc), tok)
        if kind == "id" and val in ("P", "N"):
            return self.wreath_factor()
        self.fail("expected a factor")

    def wreath_factor(self):
        wreath = self._wreath()
        tok = self.take()
        self.expect("[")
        x = self.letter()
        if tok[1] == "P":
            self.expect(",")
            y = self.letter()
            self.expect("]")
            return wreath.pgen(x, y)
        self.expect("]")
        self.expect("(")
        inner = self.expr()
        self.expect(")")
        if isinstance(inner, (int, Fraction)):
            inner = self.alg.one().scale(inner)
        if not isinstance(inner, Element) or inner.alg != self.alg:
            self.fail("N[x](...) needs an element of the base algebra", tok)
        return wreath.nu(x, inner)

    def _wreath(self):
        if self.wreath is None:
            from .fincon import WreathAlgebra

            self.wreath = WreathAlgebra(self.alg)
        return self.wreath

    def letter(self) -> int:
        tok = self.take()
        if tok[0] != "num" or len(tok[1]) != 1 or int(tok[1]) >= self.alg.k:
            self.fail("expected a letter of the alphabet", tok)
        return int(tok[1])

    def word(self):
        tok = self.take()
        if tok[0] == "id" and tok[1] == "e":
            return EMPTY
        if tok[0] != "num":
            self.fail("expected a word", tok)
        w = tuple(int(c) for c in tok[1])
        if any(c >= self.alg.k for c in w):
            self.fail(f"letter out of range for k={self.alg.k}", tok)
        return w

    def rational(self):
        tok = self.take()
        num = int(tok[1])
        if self.peek()[:2] == ("sym", "/"):
            self.take()
            den = self.take()
            if den[0] != "num" or int(den[1]) == 0:
                self.fail("expected a positive denominator", den)
            return as_rational(Fraction(num, int(den[1])))
        return num


def parse_any(text: str, alg: TreeAlgebra, wreath=None):
    """Parse into an Element (single leg) or a TensorElement."""
    value = _Parser(text, alg, wreath).parse()
    if isinstance(value, (int, Fraction)):
        return alg.one().scale(value)
    return value


def parse_element(text: str, alg: TreeAlgebra) -> Element:
    value = parse_any(text, alg)
    if not isinstance(value, Element):
        raise ParseError("expected a single-leg expression, got a tensor", 0, text)
    return value


def parse_tensor(text: str, alg: TreeAlgebra, wreath=None) -> TensorElement:
    value = parse_any(text, alg, wreath)
    return value if isinstance(value, TensorElement) else TensorElement.from_element(value)
