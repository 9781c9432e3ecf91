"""Finitely constrained quotients A_P and the free wreath product A *_w P.

A relator set I lives in the free tree algebra; J is the ideal generated by
all rho_w(I).  The quotient A_P = A_X / J is a TreeAlgebra carrying the
vanishing generators of I plus a bounded slice {rho_w(r) : |w| <= L} of J,
which the closure search uses in context.

The wreath algebra has two kinds of symbols:

  ("P", x, y)   the depth-1 generator q_I(a[x,y]) of P
  ("N", x, m)   nu_x(m) for a normalized base monomial m (never empty)

Normal form orients the commutation relation PGen-first: a P(x, .) arriving
on top of N(x, m) moves below it.  Adjacent N(x, m) N(x, m') merge.
"""

from __future__ import annotations

import json
import random
import re
import time
from dataclasses import dataclass, field
from functools import lru_cache

from .certify import certify
from .classical import (
    SubgroupSpec,
    abelian_eval,
    act_inverse,
    aut_order,
    enumerate_aut,
    enumerate_GP,
    gp_order,
    indicator_span_rank,
    preset_subgroup,
    section,
)
from .engine import (
    Certificate,
    Element,
    Gen,
    ReductionOutcome,
    SearchPolicy,
    TreeAlgebra,
    _acc,
    ideal_contexts,
    index_ideal,
    intern_monomial,
    prove_zero,
    reduce,
)
from .hopf import antipode, delta, delta_monomial, random_monomial
from .linalg import solve_in_span
from .report import VerificationReport
from .selfsim import check_relations_preserved, delta_rho_rhs, rho_word, sigma
from .syntax import parse_element
from .tensor import TensorElement, apply_on_leg, multiply_pointwise, tensor_product
from .words import enumerate_words, parse_word, render_word

# ---------------------------------------------------------------------------
# relator sets


@dataclass(frozen=True)
class RelatorSet:
    """Generators of an ideal I of the free tree algebra.

    `relators` are elements of TreeAlgebra(k); `vanishing` lists pairs
    (u, v) with a[u,v] in I.  `classical` names the subgroup P whose
    function algebra the abelianized quotient presents, when known.
    """

    k: int
    depth: int = 1
    relators: tuple = ()
    vanishing: tuple = ()
    name: str = "custom"
    classical: SubgroupSpec | None = field(default=None, compare=False)

    def __post_init__(self):
        free = TreeAlgebra(self.k)
        rels = []
        for r in self.relators:
            if r.alg != free:
                raise ValueError("relators must live in the free tree algebra")
            if r.depth() > self.depth:
                raise ValueError(f"relator {r} deeper than the constraint depth {self.depth}")
            r = reduce(r).result
            if r:
                rels.append(r)
        object.__setattr__(self, "relators", tuple(rels))
        van = []
        for u, v in self.vanishing:
            u, v = tuple(u), tuple(v)
            free.make_gen(u, v)
            if not 1 <= len(u) <= self.depth:
                raise ValueError(f"vanishing pair ({render_word(u)},{render_word(v)}) outside depth 1..{self.depth}")
            van.append((u, v))
        object.__setattr__(self, "vanishing", tuple(sorted(set(van))))

    @property
    def is_zero(self) -> bool:
        return not self.relators and not self.vanishing

    def generators(self) -> list:
        """All generators of I as elements: vanishing generators, then relators."""
        free = TreeAlgebra(self.k)
        return [free.gen(u, v) for u, v in self.vanishing] + list(self.relators)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "depth": self.depth,
            "relators": [r.render() for r in self.relators],
            "vanishing": [[render_word(u), render_word(v)] for u, v in self.vanishing],
        }

    @classmethod
    def from_json(cls, data: dict, k: int) -> "RelatorSet":
        free = TreeAlgebra(k)
        depth = int(data.get("depth", 1))
        relators = tuple(parse_element(text, free) for text in data.get("relators", ()))
        vanishing = tuple((parse_word(u), parse_word(v)) for u, v in data.get("vanishing", ()))
        return cls(k, depth, relators, vanishing, data.get("name", "custom"))

    @classmethod
    def load(cls, path: str, k: int) -> "RelatorSet":
        with open(path) as fh:
            return cls.from_json(json.load(fh), k)


def from_subgroup(P: SubgroupSpec) -> RelatorSet:
    """Depth-1 presentation of C(P) as a quotient of the depth-1 generators.

    a[x,y] vanishes when no element of P sends y to x.  For a regular P the
    entry a[g.y, y] depends only on g, which forces commutativity.  The full
    symmetric group (when not regular) is presented by I = 0, its quantum
    version.
    """
    k = P.k
    free = TreeAlgebra(k)
    transitive = all(any(g[0] == x for g in P.elements) for x in range(k))
    if len(P) == 1:
        vanishing = tuple(((x,), (y,)) for x in range(k) for y in range(k) if x != y)
        return RelatorSet(k, 1, (), vanishing, P.name, classical=P)
    if transitive and len(P) == k:
        relators = tuple(free.gen((g[0],), (0,)) - free.gen((g[y],), (y,))
                         for g in P.elements for y in range(1, k))
        return RelatorSet(k, 1, relators, (), P.name, classical=P)
    if P.elements == preset_subgroup("full", k).elements:
        return RelatorSet(k, 1, (), (), P.name, classical=P)
    raise ValueError("built-in presentations cover the trivial, regular and full subgroups only")


PRESETS = ("full", "trivial", "cyclic", "klein")


def split_preset(name: str):
    """'cyclic2' -> ('cyclic', 2); 'trivial' -> ('trivial', None)."""
    m = re.fullmatch(r"([a-z]+)(\d*)", name)
    if not m or m.group(1) not in PRESETS:
        raise ValueError(f"unknown preset {name!r} (choose from {', '.join(PRESETS)}, optionally with k appended)")
    return m.group(1), int(m.group(2)) if m.group(2) else None


def preset(name: str, k: int | None = None) -> RelatorSet:
    base, k2 = split_preset(name)
    if k2 is not None and k is not None and k2 != k:
        raise ValueError(f"preset {name!r} fixes k={k2}, but k={k} was requested")
    k = k2 if k2 is not None else (k or 2)
    P = preset_subgroup(base, k)
    if base == "full":
        return RelatorSet(k, 1, (), (), P.name, classical=P)
    return from_subgroup(P)


# ---------------------------------------------------------------------------
# quotient algebras


@lru_cache(maxsize=64)
def quotient_algebra(I: RelatorSet, word_length: int = 1) -> TreeAlgebra:
    """A_X / J with the slice {rho_w(r) : r in relators, |w| <= word_length}."""
    if I.is_zero:
        return TreeAlgebra(I.k)
    ideal = []
    for r in I.relators:
        for n in range(word_length + 1):
            for w in enumerate_words(I.k, n):
                e = rho_word(w, r)
                if e:
                    ideal.append(e)
    alg = TreeAlgebra(I.k, vanishing=I.vanishing, ideal=ideal, name=f"A_P[{I.name}]")
    alg.relator_set = I
    return alg


def to_quotient(e: Element, alg: TreeAlgebra) -> Element:
    """q_J: re-normalize an element of the free algebra in the quotient."""
    if e.alg == alg:
        return e
    return Element(alg, e.terms)


def tensor_to_quotient(t: TensorElement, alg: TreeAlgebra) -> TensorElement:
    return TensorElement(tuple(alg if isinstance(leg, TreeAlgebra) else leg for leg in t.legs), t.terms)


def quotient_reduce(e: Element, I: RelatorSet, word_length: int = 1,
                    policy: SearchPolicy | None = None) -> ReductionOutcome:
    """Is e in the bounded slice of J?  ProvedZero is a membership proof."""
    return prove_zero(to_quotient(e, quotient_algebra(I, word_length)), policy)


# ---------------------------------------------------------------------------
# coideal witnesses and the Woronowicz-ideal suite


def coideal_witness(r: Element, I: RelatorSet):
    """Exact decomposition of Delta(r) inside I (x) A + A (x) I.

    Candidates are s (x) g and g (x) s for generators s of I and g a
    generator of depth <= I.depth or the unit.  Returns a list of
    (coefficient, s, g, side) with side "left" when s is the left factor,
    or None when Delta(r) is outside the candidate span.
    """
    free = TreeAlgebra(I.k)
    gens = [free.one()] + [free.gen(u, v) for n in range(1, I.depth + 1)
                           for u in enumerate_words(I.k, n) for v in enumerate_words(I.k, n)]
    candidates = []
    for s in I.generators():
        for g in gens:
            candidates.append((s, g, "left"))
            candidates.append((s, g, "right"))
    vectors = [(tensor_product(s, g) if side == "left" else tensor_product(g, s)).terms
               for s, g, side in candidates]
    coeffs = solve_in_span(delta(r).terms, vectors)
    if coeffs is None:
        return None
    return [(c,) + candidates[i] for i, c in sorted(coeffs.items())]


def expand_witness(witness, k: int) -> TensorElement:
    free = TreeAlgebra(k)
    total = TensorElement((free, free), {})
    for c, s, g, side in witness:
        term = tensor_product(s, g) if side == "left" else tensor_product(g, s)
        total = total + term.scale(c)
    return total


def verify_woronowicz_ideal(I: RelatorSet, word_length: int = 2, policy: SearchPolicy | None = None,
                            kappa_length: int | None = 1) -> VerificationReport:
    """Delta(rho_w(r)) vanishes in A_P (x) A_P for every generator r of I and |w| <= word_length.

    Route: a coideal witness for Delta(r); the factorization
    Delta(rho_w(r)) = sum_y (1 (x) a[y,w])(rho_y (x) rho_w)(Delta(r));
    membership of every rho_y(s) or rho_w(s) in J.  Stability of the
    slice under kappa is checked for |w| <= kappa_length (None: skip).
    """
    start = time.perf_counter()
    k = I.k
    report = VerificationReport("woronowicz-ideal", {"k": k, "preset": I.name, "word_length": word_length,
                                                     "kappa_length": kappa_length})
    if I.is_zero:
        report.exact("relator count (I = 0)", 0, 0)
        report.duration = time.perf_counter() - start
        return report
    A = quotient_algebra(I, word_length)
    members: dict = {}

    def member(e: Element, tag: str) -> bool:
        key = e
        if key not in members:
            r = certify(report, f"{tag} in J", to_quotient(e, A), A.zero(), policy)
            members[key] = r.certificate is Certificate.PROVED_ZERO
        return members[key]

    for idx, r in enumerate(I.generators()):
        label = f"generator#{idx} [{r}]"
        witness = coideal_witness(r, I)
        if witness is None:
            report.record(f"{label} coideal witness", f"Delta({r})", "I (x) A + A (x) I", Certificate.UNVERIFIED)
            continue
        rec = report.exact(f"{label} coideal witness expands to Delta(r)",
                           expand_witness(witness, k).render(), delta(r).render())
        witness_ok = rec.certificate is Certificate.PROVED_ZERO
        for n in range(word_length + 1):
            for w in enumerate_words(k, n):
                tag = f"{label} w={render_word(w)}"
                rw = rho_word(w, r)
                factored = certify(report, f"{tag} factorization of Delta(rho_w(r))", delta(rw), delta_rho_rhs(w, r), policy)
                ok = witness_ok and factored.certificate is Certificate.PROVED_ZERO
                for c, s, g, side in witness:
                    if side == "left":
                        for y in enumerate_words(k, n):
                            ok = member(rho_word(y, s), f"rho_{render_word(y)}({s})") and ok
                    else:
                        ok = member(rho_word(w, s), f"rho_{render_word(w)}({s})") and ok
                image = tensor_to_quotient(delta(rw), A)
                report.record(f"{tag} (q_J x q_J)Delta(rho_w(r)) = 0", image.render(), "0",
                              Certificate.PROVED_ZERO if ok else Certificate.UNVERIFIED, difference=image)
                if kappa_length is not None and n <= kappa_length:
                    member(antipode(rw), f"kappa(rho_{render_word(w)}({r}))")
    report.duration = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# the wreath algebra


class WreathAlgebra:
    """A *_w P: one copy nu_x(A) per letter, free product with P, modulo
    nu_x(a) q(a[x,y]) = q(a[x,y]) nu_x(a)."""

    kind = "wreath"
    unit = ()

    def __init__(self, base: TreeAlgebra, I: RelatorSet | None = None):
        self.base = base
        self.k = base.k
        if I is None:
            I = getattr(base, "relator_set", None) or RelatorSet(base.k)
        if I.depth != 1:
            raise ValueError("the wreath product needs a depth-1 relator set")
        self.I = I
        self.p_vanishing = frozenset((u[0], v[0]) for u, v in I.vanishing)
        self.p_relators = tuple(
            {tuple(("P", g.row[0], g.col[0]) for g in m): c for m, c in r.terms.items()} for r in I.relators)
        self._p_index = index_ideal(self.p_relators)
        self.name = f"W[{base.name}]"
        self._cache: dict = {}

    def __eq__(self, other):
        return isinstance(other, WreathAlgebra) and (self.base, self.I) == (other.base, other.I)

    def __hash__(self):
        return hash((WreathAlgebra, self.base, self.I))

    def __repr__(self):
        return f"WreathAlgebra({self.base!r}, {self.I.name})"

    # -- construction helpers
    def one(self) -> Element:
        return Element(self, {(): 1})

    def zero(self) -> Element:
        return Element(self, {})

    def pgen(self, x: int, y: int) -> Element:
        return Element(self, {(("P", x, y),): 1})

    def nu(self, x: int, e: Element) -> Element:
        """nu_x(e) for an element of the base algebra."""
        if e.alg != self.base:
            raise ValueError("nu_x needs an element of the base algebra")
        return Element(self, {(("N", x, m),) if m else (): c for m, c in e.terms.items()})

    def p_vanishes(self, x: int, y: int) -> bool:
        return (x, y) in self.p_vanishing

    # -- normal form
    def normalize(self, factors: tuple):
        hit = self._cache.get(factors)
        if hit is not None or factors in self._cache:
            return hit
        stack: list = []
        out = stack if self._push(stack, factors) else None
        if out is not None:
            out = intern_monomial(tuple(out))
        if len(self._cache) > 200_000:
            self._cache.clear()
        self._cache[factors] = out
        return out

    def _push(self, stack: list, items) -> bool:
        base = self.base
        for it in items:
            if it[0] == "N":
                _, x, m = it
                m = base.normalize(m)
                if m is None:
                    return False
                if not m:
                    continue
                if stack and stack[-1][0] == "N" and stack[-1][1] == x:
                    merged = base.mul(stack.pop()[2], m)
                    if merged is None:
                        return False
                    if merged:
                        stack.append(("N", x, merged))
                    continue
                stack.append(("N", x, m))
                continue
            _, x, y = it
            if self.p_vanishes(x, y):
                return False
            if stack and stack[-1][0] == "N":
                top = stack[-1]
                if top[1] == x:
                    # nu_x commutes with row x of P: move the P symbol below
                    stack.pop()
                    if not self._push(stack, (it,)):
                        return False
                    stack.append(top)
                    continue
                below = stack[-2] if len(stack) >= 2 else None
                if below is not None and below[0] == "P" and below[1] == top[1] and below[2] == y:
                    # P(x',y) N(x',m) P(x,y) = N(x',m) P(x',y) P(x,y) = 0 for x' != x
                    return False
            elif stack and stack[-1][0] == "P":
                _, x0, y0 = stack[-1]
                if (x0 == x) != (y0 == y):
                    return False
                if x0 == x:
                    continue
            stack.append(it)
        return True

    def mul(self, m1: tuple, m2: tuple):
        if not m1:
            return m2
        if not m2:
            return m1
        return self.normalize(m1 + m2)

    def adjoint(self, m: tuple):
        out = []
        for it in reversed(m):
            if it[0] == "P":
                out.append(it)
            else:
                a = self.base.adjoint(it[2])
                if a is None:
                    return None
                out.append(("N", it[1], a))
        return self.normalize(tuple(out))

    # -- R4 and relation instances
    def group_size(self, gkey) -> int:
        tag = gkey[0]
        if tag == "Pr":
            return sum(1 for y in range(self.k) if not self.p_vanishes(gkey[2], y))
        if tag == "Pc":
            return sum(1 for x in range(self.k) if not self.p_vanishes(x, gkey[2]))
        bkey = gkey[3]
        return self.base.group_size(bkey) if hasattr(self.base, "group_size") else self.k

    def collapse_groups(self, m: tuple):
        out = []
        for i, it in enumerate(m):
            left, right = m[:i], m[i + 1:]
            if it[0] == "P":
                _, x, y = it
                out.append((("Pr", i, x, left, right), y, left + right))
                out.append((("Pc", i, y, left, right), x, left + right))
            else:
                _, x, mm = it
                for gkey, member, repl in self.base.collapse_groups(mm):
                    out.append((("N", i, x, gkey, left, right), member, left + (("N", x, repl),) + right))
        return out

    def relations(self, m: tuple, tier: int = 0):
        k = self.k
        out = []
        for i, it in enumerate(m):
            left, right = m[:i], m[i + 1:]
            if it[0] == "P":
                _, x, y = it
                row = {left + right: 1}
                col = {left + right: 1}
                for z in range(k):
                    _acc(row, left + (("P", x, z),) + right, -1)
                    _acc(col, left + (("P", z, y),) + right, -1)
                out.extend((row, col))
            else:
                _, x, mm = it
                for local in self.base.relations(mm, tier):
                    vec: dict = {}
                    for key, c in local.items():
                        _acc(vec, left + ((("N", x, key),) if key else ()) + right, c)
                    out.append(vec)
        out.extend(ideal_contexts(self._p_index, self.p_relators, m, tier))
        if tier >= 1:
            for i in range(len(m) + 1):
                left, right = m[:i], m[i:]
                for x in range(k):
                    row = {m: 1}
                    col = {m: 1}
                    for z in range(k):
                        _acc(row, left + (("P", x, z),) + right, -1)
                        _acc(col, left + (("P", z, x),) + right, -1)
                    out.extend((row, col))
        return out

    # -- display and bookkeeping
    def _item_key(self, it):
        if it[0] == "P":
            return (0, it[1], it[2], ())
        return (1, it[1], 0, self.base.sort_key(it[2]))

    def sort_key(self, m: tuple):
        return (len(m), tuple(self._item_key(it) for it in m))

    def render_item(self, it) -> str:
        if it[0] == "P":
            return f"P[{it[1]},{it[2]}]"
        return f"N[{it[1]}]({self.base.render(it[2])})"

    def render(self, m: tuple) -> str:
        return "*".join(self.render_item(it) for it in m) if m else "1"

    def depth_of(self, m: tuple) -> int:
        return max((1 if it[0] == "P" else 1 + self.base.depth_of(it[2]) for it in m), default=0)

    # -- the maps phi and classical evaluation
    def phi_monomial(self, m: tuple) -> Element:
        """phi(P(x,y)) = a[x,y], phi(N(x,m)) = sigma_x(m), multiplied out in the base."""
        return _phi_monomial(self, m)

    def evaluate(self, m: tuple, g) -> int:
        """Value at a classical point g of G_P: [g.y = x] and m evaluated at g|_{g^-1 x}."""
        for it in m:
            if it[0] == "P":
                if g.table[(it[2],)] != (it[1],):
                    return 0
            else:
                y = act_inverse(g, (it[1],))
                if not abelian_eval(Element(self.base, {it[2]: 1}, normalized=True), section(g, y)):
                    return 0
        return 1


@lru_cache(maxsize=100_000)
def _phi_monomial(W: WreathAlgebra, m: tuple) -> Element:
    base = W.base
    out = base.one()
    for it in m:
        if it[0] == "P":
            img = base.gen((it[1],), (it[2],))
        else:
            img = sigma(it[1], Element(base, {it[2]: 1}, normalized=True))
        out = out * img
        if not out:
            break
    return out


def wreath_reduce(e: Element, policy: SearchPolicy | None = None) -> ReductionOutcome:
    """Certified reduction of a wreath element (normal form plus closure search)."""
    return prove_zero(e, policy)


def phi_map(e: Element) -> Element:
    W = e.alg
    return e.map_monomials(W.phi_monomial) if e.terms else W.base.zero()


@lru_cache(maxsize=100_000)
def _pi_gen(W: WreathAlgebra, g: Gen) -> Element:
    x, y = g.row[0], g.col[0]
    p = W.pgen(x, y)
    if len(g.row) == 1:
        return p
    return p * W.nu(x, W.base.gen(g.row[1:], g.col[1:]))


def pi_monomial(W: WreathAlgebra, m: tuple) -> Element:
    out = W.one()
    for g in m:
        out = out * _pi_gen(W, g)
        if not out:
            break
    return out


def pi_map(e: Element, W: WreathAlgebra | None = None) -> Element:
    """a[xu,yv] -> P(x,y) N(x, a[u,v]), extended multiplicatively."""
    W = W or WreathAlgebra(e.alg)
    if e.alg != W.base:
        raise ValueError("pi needs an element of the wreath product's base algebra")
    total = W.zero()
    for m, c in e.terms.items():
        total = total + pi_monomial(W, m).scale(c)
    return total


# -- comultiplication


@lru_cache(maxsize=100_000)
def _wreath_delta_item(W: WreathAlgebra, it) -> TensorElement:
    k = W.k
    if it[0] == "P":
        _, x, y = it
        terms = {((("P", x, z),), (("P", z, y),)): 1 for z in range(k)}
        return TensorElement((W, W), terms)
    _, x, m = it
    terms: dict = {}
    for (l, r), c in delta_monomial(W.base, m).terms.items():
        for z in range(k):
            left = ((("N", x, l),) if l else ()) + (("P", x, z),)
            right = (("N", z, r),) if r else ()
            _acc(terms, (left, right), c)
    return TensorElement((W, W), terms)


def wreath_delta_monomial(W: WreathAlgebra, m: tuple) -> TensorElement:
    out = TensorElement((W, W), {((), ()): 1})
    for it in m:
        out = multiply_pointwise(out, _wreath_delta_item(W, it))
        if not out.terms:
            break
    return out


def wreath_delta(e: Element) -> TensorElement:
    """Delta_w(P(x,y)) = sum_z P(x,z) (x) P(z,y);
    Delta_w(N(x,a)) = sum_z sum nu_x(a_1) P(x,z) (x) nu_z(a_2)."""
    W = e.alg
    total = TensorElement((W, W), {})
    for m, c in e.terms.items():
        total = total + wreath_delta_monomial(W, m).scale(c)
    return total


# ---------------------------------------------------------------------------
# random test data


def random_wreath_monomial(W: WreathAlgebra, rng: random.Random, depth: int, degree: int) -> Element:
    """Product of up to `degree` symbols; N symbols carry base monomials of depth <= depth - 1."""
    out = W.one()
    for _ in range(rng.randint(1, degree)):
        x = rng.randrange(W.k)
        if depth <= 1 or rng.random() < 0.5:
            out = out * W.pgen(x, rng.randrange(W.k))
        else:
            inner = random_monomial(W.base.free if hasattr(W.base, "free") else W.base, rng, depth - 1, 2)
            out = out * W.nu(x, to_quotient(inner, W.base))
    return out


def random_wreath_monomials(W, seed, depth, degree, count):
    rng = random.Random(seed)
    out = []
    tries = 0
    while len(out) < count and tries < 50 * count:
        tries += 1
        m = random_wreath_monomial(W, rng, depth, degree)
        if m and m != W.one():
            out.append(m)
    return out


def _random_base(A: TreeAlgebra, seed: int, depth: int, degree: int, count: int):
    rng = random.Random(seed)
    free = A.free
    out = []
    tries = 0
    while len(out) < count and tries < 50 * count:
        tries += 1
        m = to_quotient(random_monomial(free, rng, depth, degree), A)
        if m:
            out.append(m)
    return out


def _base_generators(A: TreeAlgebra, depth: int, min_depth: int = 1):
    for n in range(min_depth, depth + 1):
        for g in A.generators(n):
            e = A.gen(g.row, g.col)
            if e:
                yield g, e


def wreath_generators(W: WreathAlgebra, depth: int):
    """P(x,y) and N(x, a[u,v]) with 1 <= |u| <= depth - 1, skipping zeros."""
    out = []
    for x in range(W.k):
        for y in range(W.k):
            p = W.pgen(x, y)
            if p:
                out.append((f"P[{x},{y}]", p))
    for x in range(W.k):
        for g, e in _base_generators(W.base, depth - 1):
            out.append((f"N[{x}]({g})", W.nu(x, e)))
    return out


# ---------------------------------------------------------------------------
# block matrices a^{(lambda, X)}


def block_entry(W: WreathAlgebra, n: int, i, x, j, y) -> Element:
    """Entry ((i,x),(j,y)) of the block built from the depth-n generator matrix."""
    p = W.pgen(x, y)
    if n == 0:
        return p
    return W.nu(x, W.base.gen(i, j)) * p


def _block_products(report, W: WreathAlgebra, n: int, policy):
    """a a^* = a^* a = 1 and conj(a) a^T = a^T conj(a) = 1 for the depth-n block."""
    k = W.k
    idx = [(i, x) for i in enumerate_words(k, n) for x in range(k)]
    a = {(r, c): block_entry(W, n, r[0], r[1], c[0], c[1]) for r in idx for c in idx}
    b = {(r, c): a[(c, r)].adjoint() for r in idx for c in idx}       # a^*
    at = {(r, c): a[(c, r)] for r in idx for c in idx}               # a^T
    conj = {(r, c): a[(r, c)].adjoint() for r in idx for c in idx}  # conj(a)
    one, zero = W.one(), W.zero()

    def name(r):
        return f"({render_word(r[0])},{r[1]})"

    for tag, left, right in (("a a^*", a, b), ("a^* a", b, a), ("conj(a) a^T", conj, at), ("a^T conj(a)", at, conj)):
        for r in idx:
            for c in idx:
                total = zero
                for m in idx:
                    total = total + left[(r, m)] * right[(m, c)]
                certify(report, f"block n={n} {tag} [{name(r)},{name(c)}]", total, one if r == c else zero, policy)
    return a, idx


def _block_corep(report, W: WreathAlgebra, a, idx, n: int, policy):
    for r in idx:
        for c in idx:
            lhs = wreath_delta(a[(r, c)])
            rhs = TensorElement((W, W), {})
            for m in idx:
                rhs = rhs + tensor_product(a[(r, m)], a[(m, c)])
            certify(report, f"block n={n} Delta_w(a[{r},{c}]) = sum a (x) a", lhs, rhs, policy)


# ---------------------------------------------------------------------------
# classical cross-checks


def classical_crosscheck(I: RelatorSet, max_depth: int, report: VerificationReport | None = None,
                         cap: int = 5000) -> VerificationReport:
    """G_P against the abelianized quotient.

    For each n <= max_depth: the indicator span rank on r_n(G_P) equals
    |P|^((k^n-1)/(k-1)); every slice element of J vanishes on G_P; and the
    common zero set of J's slice inside Aut(X^[n]) is exactly r_n(G_P).
    """
    report = report or VerificationReport("classical-crosscheck", {"k": I.k, "preset": I.name, "max_depth": max_depth})
    P = I.classical
    if P is None:
        report.record("classical subgroup", I.name, "none", Certificate.UNVERIFIED)
        return report
    for n in range(1, max_depth + 1):
        if gp_order(P, n) > cap:
            break
        G = enumerate_GP(P, n)
        report.exact(f"|r_{n}(G_P)| = |P|^((k^n-1)/(k-1))", len(G), gp_order(P, n))
        report.exact(f"indicator span rank on r_{n}(G_P)", indicator_span_rank(G, n), gp_order(P, n))
        slice_ = _ideal_slice(I, n)
        bad = sum(1 for g in G for e in slice_ if abelian_eval(e, g))
        report.exact(f"J slice vanishes on r_{n}(G_P)", bad, 0)
        if aut_order(I.k, n) <= cap:
            aut = enumerate_aut(I.k, n)
            zeros = sum(1 for g in aut if not any(abelian_eval(e, g) for e in slice_))
            report.exact(f"zero set of J slice in Aut(X^[{n}]) = r_{n}(G_P)", zeros, len(G))
    return report


def _ideal_slice(I: RelatorSet, n: int) -> list:
    """rho_w(r) for |w| <= n - depth, plus rho_w of vanishing generators, as free elements."""
    out = []
    for r in I.generators():
        for m in range(0, n - I.depth + 1):
            for w in enumerate_words(I.k, m):
                e = rho_word(w, r)
                if e:
                    out.append(e)
    return out


# ---------------------------------------------------------------------------
# suites


def verify_wreath_iso(I: RelatorSet, d: int = 2, g: int = 2, seed: int = 0, samples: int = 6,
                      word_length: int = 1, policy: SearchPolicy | None = None) -> VerificationReport:
    """pi and phi between A_P and A_P *_w P, checked on generators and random monomials."""
    start = time.perf_counter()
    k = I.k
    report = VerificationReport("wreath-iso", {"k": k, "preset": I.name, "d": d, "g": g, "seed": seed,
                                               "samples": samples, "word_length": word_length})
    A = quotient_algebra(I, word_length)
    W = WreathAlgebra(A, I)

    def pi(e):
        return pi_map(e, W)

    # (i) the family pi(a[u,v]) satisfies the defining relations
    check_relations_preserved(report, A, pi, "pi", d, policy, target=W)
    # (ii) phi kills the wreath relators
    for x in range(k):
        for y in range(k):
            p = W.pgen(x, y)
            if not p:
                continue
            for gen, e in _base_generators(A, d - 1):
                n = W.nu(x, e)
                certify(report, f"phi(N[{x}]({gen}) P[{x},{y}] - P[{x},{y}] N[{x}]({gen}))",
                        phi_map(n) * phi_map(p), phi_map(p) * phi_map(n), policy)
    for idx, r in enumerate(I.relators):
        certify(report, f"phi(q_I(relator#{idx})) in J", to_quotient(r, A), A.zero(), policy)
    rng_pairs = _random_base(A, seed + 7, max(d - 1, 1), 1, 2 * samples)
    for x in range(k):
        for i in range(0, len(rng_pairs) - 1, 2):
            a, b = rng_pairs[i], rng_pairs[i + 1]
            certify(report, f"phi(N[{x}](a) N[{x}](b)) = sigma_{x}(ab) for {a} | {b}",
                    phi_map(W.nu(x, a) * W.nu(x, b)), sigma(x, a * b), policy)
    # (iii) mutually inverse
    base_items = [(str(gen), e) for gen, e in _base_generators(A, d)]
    base_items += [(f"random {e}", e) for e in _random_base(A, seed, d, g, samples)]
    for label, e in base_items:
        certify(report, f"phi(pi({label})) = id", phi_map(pi(e)), e, policy)
    wreath_items = wreath_generators(W, d)
    wreath_items += [(f"random {e}", e) for e in random_wreath_monomials(W, seed + 1, d, g, samples)]
    for label, e in wreath_items:
        certify(report, f"pi(phi({label})) = id", pi(phi_map(e)), e, policy)
    # (iv) comultiplication
    for label, e in base_items:
        lhs = wreath_delta(pi(e))
        rhs = apply_on_leg(delta(e), 0, lambda m: pi_monomial(W, m), (W,))
        rhs = apply_on_leg(rhs, 1, lambda m: pi_monomial(W, m), (W,))
        certify(report, f"Delta_w(pi({label})) = (pi x pi)Delta", lhs, rhs, policy)
    # (v) matrix conditions
    for n in range(0, d):
        _block_products(report, W, n, policy)
    if I.classical is not None:
        classical_crosscheck(I, d, report)
    report.duration = time.perf_counter() - start
    return report


def verify_wreath_comult(I: RelatorSet, d: int = 2, g: int = 2, seed: int = 0, samples: int = 6,
                         word_length: int = 1, policy: SearchPolicy | None = None) -> VerificationReport:
    """Delta_w is a coassociative comultiplication compatible with phi, with unitary corepresentations."""
    start = time.perf_counter()
    k = I.k
    report = VerificationReport("wreath-comult", {"k": k, "preset": I.name, "d": d, "g": g, "seed": seed,
                                                  "samples": samples, "word_length": word_length})
    A = quotient_algebra(I, word_length)
    W = WreathAlgebra(A, I)
    items = wreath_generators(W, d)
    items += [(f"random {e}", e) for e in random_wreath_monomials(W, seed, d, g, samples)]
    for label, e in items:
        dw = wreath_delta(e)
        lhs = apply_on_leg(dw, 0, lambda m: wreath_delta_monomial(W, m), (W, W))
        rhs = apply_on_leg(dw, 1, lambda m: wreath_delta_monomial(W, m), (W, W))
        certify(report, f"coassoc Delta_w {label}", lhs, rhs, policy)
        phi2 = apply_on_leg(dw, 0, W.phi_monomial, (A,))
        phi2 = apply_on_leg(phi2, 1, W.phi_monomial, (A,))
        certify(report, f"(phi x phi)Delta_w = Delta phi on {label}", phi2, delta(phi_map(e)), policy)
    for x in range(k):
        for y in range(k):
            p = W.pgen(x, y)
            for gen, e in _base_generators(A, d - 1):
                n = W.nu(x, e)
                lhs = multiply_pointwise(wreath_delta(n), wreath_delta(p))
                rhs = multiply_pointwise(wreath_delta(p), wreath_delta(n))
                certify(report, f"Delta_w respects N[{x}]({gen}) P[{x},{y}] = P[{x},{y}] N[{x}]({gen})", lhs, rhs, policy)
    for n in range(0, d):
        a, idx = _block_products(report, W, n, policy)
        _block_corep(report, W, a, idx, n, policy)
    report.duration = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# the equivalence-of-descriptions helper used by the CLI


def describe(I: RelatorSet) -> dict:
    out = I.to_json()
    out["k"] = I.k
    out["classical"] = I.classical.name if I.classical is not None else None
    if I.classical is not None:
        out["order"] = len(I.classical)
    return out
