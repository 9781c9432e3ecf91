"""Free *-algebra on the projections a[u,v] and its reduction engine.

Monomials are tuples of generators; an element is a finite map from
normalized monomials to nonzero rationals. Normalization applies the
monomial-local rules:

  R1  a[e,e] = 1 is never stored
  R2  g g -> g
  R3  for adjacent a[p,q] a[u,v] let m = min(|p|, |u|) and let jp, jq be the
      common-prefix lengths of (p, u) and (q, v).  If jp != jq the product is
      zero.  If jp == jq == m the shallower factor is absorbed into the deeper
      one (this includes R2).  Otherwise the pair is irreducible.

R3 follows from the magic-square relations: inserting a[p[:j], q[:j]] and
a[u[:j], v[:j]] next to each other exposes a same-row or same-column product
of distinct generators as soon as exactly one of the prefixes agrees.

R4 (sum-collapse) acts on linear combinations and lives in `reduce`.
Identities that need relations used "backwards" are handled by
`prove_zero`, which searches a bounded span of relation instances with
exact linear algebra.
"""

from __future__ import annotations

import itertools
import os
import threading
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple

from .linalg import SparseEliminator, as_rational
from .words import EMPTY, Alphabet, Word, common_prefix_length, enumerate_words, render_word


class Gen(NamedTuple):
    row: Word
    col: Word

    @property
    def depth(self) -> int:
        return len(self.row)

    def __str__(self):
        return f"a[{render_word(self.row)},{render_word(self.col)}]"


class Certificate(str, Enum):
    PROVED_ZERO = "ProvedZero"
    IRREDUCIBLE = "Irreducible"
    BUDGET_EXHAUSTED = "BudgetExhausted"
    FAILED_NUMERIC = "FailedNumeric"
    UNVERIFIED = "Unverified"
    REFUTED = "Refuted"

    def __str__(self):
        return self.value


DEFAULT_MAX_STEPS = 10**6


def default_max_steps() -> int:
    env = os.environ.get("QTREE_BUDGET")
    return int(env) if env else DEFAULT_MAX_STEPS


@dataclass(frozen=True)
class ReductionBudget:
    max_steps: int = field(default_factory=default_max_steps)


@dataclass(frozen=True)
class SearchPolicy:
    """Bounds for prove_zero.

    rounds: frontier expansions of the relation-instance search.
    max_vectors: cap on relation instances before giving up.
    refine_levels: extra depths tried by the refine strategy.
    """

    strategies: tuple = ("collapse", "refine", "linear")
    rounds: int = 2
    max_vectors: int = 20000
    refine_levels: int = 1
    budget: ReductionBudget = field(default_factory=ReductionBudget)


@dataclass
class ReductionOutcome:
    result: object
    certificate: Certificate
    steps: list = field(default_factory=list)

    @property
    def proved_zero(self) -> bool:
        return self.certificate is Certificate.PROVED_ZERO


# ---------------------------------------------------------------------------
# interning

_INTERN: dict = {}
_INTERN_LOCK = threading.Lock()


def intern_monomial(m: tuple) -> tuple:
    got = _INTERN.get(m)
    if got is not None:
        return got
    with _INTERN_LOCK:
        return _INTERN.setdefault(m, m)


# ---------------------------------------------------------------------------
# the algebra


def _pair_rule(g: Gen, h: Gen):
    """Result of g*h for adjacent generators: None (irreducible), 0, or a Gen."""
    p, q = g
    u, v = h
    m = min(len(p), len(u))
    jp = common_prefix_length(p, u)
    jq = common_prefix_length(q, v)
    if jp != jq:
        return 0
    if jp < m:
        return None
    return g if len(p) >= len(u) else h


class TreeAlgebra:
    """The dense *-subalgebra of A_X, optionally modulo vanishing generators.

    `vanishing` holds word pairs (u, v); any generator carrying (u, v) as an
    aligned window (same offset in both words) is zero.  That is exactly the
    set of generators lying in the ideal generated by rho_w(a[u,v]).
    """

    kind = "algebra"
    unit = ()

    def __init__(self, k: int, vanishing: Iterable = (), name: str | None = None, ideal: Iterable = ()):
        self.k = Alphabet(k).size
        self.vanishing = frozenset((tuple(u), tuple(v)) for u, v in vanishing)
        for u, v in self.vanishing:
            if len(u) != len(v) or not u:
                raise ValueError(f"bad vanishing pair {u}, {v}")
        self._vanish_lengths = sorted({len(u) for u, _ in self.vanishing})
        # ideal: term maps of elements known to lie in the ideal being divided out
        self.ideal = tuple(dict(e.terms) if isinstance(e, Element) else dict(e) for e in ideal)
        self._ideal_key = tuple(frozenset(t.items()) for t in self.ideal)
        self._ideal_index = index_ideal(self.ideal)
        quotient = self.vanishing or self.ideal
        self.name = name or (f"A_X(k={self.k})" if not quotient else f"A_X(k={self.k})/J")
        self._cache: dict = {}

    def __eq__(self, other):
        return isinstance(other, TreeAlgebra) and (self.k, self.vanishing, self._ideal_key) == (
            other.k, other.vanishing, other._ideal_key)

    def __hash__(self):
        return hash((TreeAlgebra, self.k, self.vanishing, self._ideal_key))

    def __repr__(self):
        extra = f", ideal=<{len(self.ideal)} elements>" if self.ideal else ""
        return f"TreeAlgebra(k={self.k}, vanishing={sorted(self.vanishing)}{extra})"

    def __reduce__(self):
        return (TreeAlgebra, (self.k, sorted(self.vanishing), self.name, self.ideal))

    @property
    def free(self) -> "TreeAlgebra":
        """The same alphabet without vanishing generators or ideal."""
        return TreeAlgebra(self.k) if (self.vanishing or self.ideal) else self

    # -- construction helpers
    def gen(self, u, v) -> "Element":
        return Element(self, {(self.make_gen(u, v),): 1})

    def make_gen(self, u, v) -> Gen:
        u, v = tuple(u), tuple(v)
        if len(u) != len(v):
            raise ValueError(f"unequal word lengths in a[{render_word(u)},{render_word(v)}]")
        Alphabet(self.k).check(u)
        Alphabet(self.k).check(v)
        return Gen(u, v)

    def one(self) -> "Element":
        return Element(self, {(): 1})

    def zero(self) -> "Element":
        return Element(self, {})

    def generators(self, depth: int) -> list[Gen]:
        ws = enumerate_words(self.k, depth)
        return [Gen(u, v) for u in ws for v in ws]

    # -- rules
    def vanishes(self, g: Gen) -> bool:
        if not self._vanish_lengths:
            return False
        p, q = g
        for d in self._vanish_lengths:
            for j in range(len(p) - d + 1):
                if (p[j:j + d], q[j:j + d]) in self.vanishing:
                    return True
        return False

    def normalize(self, factors: tuple):
        """Normal form of a product of generators under R1-R3, or None for zero."""
        hit = self._cache.get(factors)
        if hit is not None or factors in self._cache:
            return hit
        out = self._push(list(), factors)
        if out is not None:
            out = intern_monomial(tuple(out))
        if len(self._cache) > 500_000:
            self._cache.clear()
        self._cache[factors] = out
        return out

    def _push(self, stack: list, factors):
        for g in factors:
            if not g.row:
                continue
            if self.vanishes(g):
                return None
            while stack:
                r = _pair_rule(stack[-1], g)
                if r is None:
                    break
                if r == 0:
                    return None
                stack.pop()
                g = r
            stack.append(g)
        return stack

    def mul(self, m1: tuple, m2: tuple):
        if not m1:
            return m2
        if not m2:
            return m1
        return self.normalize(m1 + m2)

    def adjoint(self, m: tuple):
        return self.normalize(tuple(reversed(m)))

    def group_size(self, gkey) -> int:
        """Number of non-vanishing members an R4 group needs."""
        if not self.vanishing:
            return self.k
        if gkey[0] == "r":
            row, cprefix = gkey[2], gkey[3]
            return sum(1 for y in range(self.k) if not self.vanishes(Gen(row, cprefix + (y,))))
        rprefix, col = gkey[2], gkey[3]
        return sum(1 for z in range(self.k) if not self.vanishes(Gen(rprefix + (z,), col)))

    def collapse_groups(self, m: tuple):
        """R4 candidates: (group key, member letter, monomial after collapse)."""
        out = []
        for i, g in enumerate(m):
            n = len(g.row)
            left, right = m[:i], m[i + 1:]
            parent = (Gen(g.row[:-1], g.col[:-1]),) if n > 1 else ()
            repl = left + parent + right
            out.append((("r", i, g.row, g.col[:-1], left, right), g.col[-1], repl))
            out.append((("c", i, g.row[:-1], g.col, left, right), g.row[-1], repl))
        return out

    def relations(self, m: tuple, tier: int = 0):
        """Relation instances in the context of m (unnormalized monomials).

        tier 0: collapse each factor into its parent (both directions);
        tier 1: additionally expand each factor into its children, and
        expand the unit when m is empty.
        """
        k = self.k
        out = []
        for i, g in enumerate(m):
            left, right = m[:i], m[i + 1:]
            p, q = g
            parent = (Gen(p[:-1], q[:-1]),) if len(p) > 1 else ()
            base = left + parent + right
            vec = {base: 1}
            for y in range(k):
                _acc(vec, left + (Gen(p, q[:-1] + (y,)),) + right, -1)
            out.append(vec)
            vec = {base: 1}
            for z in range(k):
                _acc(vec, left + (Gen(p[:-1] + (z,), q),) + right, -1)
            out.append(vec)
            if tier >= 1:
                for x in range(k):
                    vec = {m: 1}
                    for y in range(k):
                        _acc(vec, left + (Gen(p + (x,), q + (y,)),) + right, -1)
                    out.append(vec)
                    vec = {m: 1}
                    for z in range(k):
                        _acc(vec, left + (Gen(p + (z,), q + (x,)),) + right, -1)
                    out.append(vec)
        out.extend(ideal_contexts(self._ideal_index, self.ideal, m, tier))
        if tier >= 1 and not m:
            for x in range(k):
                vec = {(): 1}
                for y in range(k):
                    _acc(vec, (Gen((x,), (y,)),), -1)
                out.append(vec)
                vec = {(): 1}
                for z in range(k):
                    _acc(vec, (Gen((z,), (x,)),), -1)
                out.append(vec)
        return out

    def sort_key(self, m: tuple):
        return (len(m), tuple((len(g.row), g.row, g.col) for g in m))

    def render(self, m: tuple) -> str:
        return "*".join(str(g) for g in m) if m else "1"

    def depth_of(self, m: tuple) -> int:
        return max((len(g.row) for g in m), default=0)

    def generators_of(self, m: tuple):
        return iter(m)


def index_ideal(ideal) -> dict:
    """Map each monomial to the ideal elements (by position) that contain it."""
    index: dict = {}
    for n, t in enumerate(ideal):
        for key in t:
            index.setdefault(key, []).append(n)
    return index


def ideal_contexts(index: dict, ideal, m: tuple, tier: int):
    """Vectors left*t*right for ideal elements t.

    Every t having a monomial equal to a segment of m is placed so that
    the product contains m; at tier >= 1, t is also inserted between any
    two factors of m.
    """
    out = []
    if not ideal:
        return out
    hits = set()
    for i in range(len(m) + 1):
        for j in range(i + 1, len(m) + 1):
            for n in index.get(m[i:j], ()):
                hits.add((i, j, n))
    if tier >= 1:
        for i in range(len(m) + 1):
            for n in range(len(ideal)):
                hits.add((i, i, n))
    for i, j, n in sorted(hits):
        left, right = m[:i], m[j:]
        out.append({left + key + right: c for key, c in ideal[n].items()})
    return out


def _acc(vec: dict, key, c):
    nv = vec.get(key, 0) + c
    if nv:
        vec[key] = nv
    else:
        vec.pop(key, None)


# ---------------------------------------------------------------------------
# elements


class Element:
    """Exact-rational linear combination of normalized monomials."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms: dict | None = None, normalized: bool = False):
        self.alg = alg
        if normalized:
            self.terms = terms if terms is not None else {}
            return
        out: dict = {}
        for m, c in (terms or {}).items():
            if not c:
                continue
            nm = alg.normalize(tuple(m))
            if nm is None:
                continue
            _acc(out, nm, as_rational(c))
        self.terms = out

    # -- basics
    @property
    def k(self) -> int:
        return self.alg.k

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self):
        key = self.alg.sort_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]))

    def coefficient(self, m) -> object:
        return self.terms.get(tuple(m), 0)

    def depth(self) -> int:
        return max((self.alg.depth_of(m) for m in self.terms), default=0)

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def _check(self, other: "Element"):
        if self.alg != other.alg:
            raise ValueError(f"algebra mismatch: {self.alg!r} vs {other.alg!r}")

    def _coerce(self, other):
        if isinstance(other, Element):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.alg.one().scale(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, c)
        return Element(self.alg, out, normalized=True)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.alg, {m: -c for m, c in self.terms.items()}, normalized=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Element":
        c = as_rational(c)
        if not c:
            return Element(self.alg, {}, normalized=True)
        return Element(self.alg, {m: as_rational(v * c) for m, v in self.terms.items()}, normalized=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        mul = self.alg.mul
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mul(m1, m2)
                if m is not None:
                    _acc(out, m, c1 * c2)
        return Element(self.alg, out, normalized=True)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.alg == other.alg and self.terms == other.terms

    def __hash__(self):
        return hash((self.alg, frozenset(self.terms.items())))

    def adjoint(self) -> "Element":
        out: dict = {}
        for m, c in self.terms.items():
            nm = self.alg.adjoint(m)
            if nm is not None:
                _acc(out, nm, c)
        return Element(self.alg, out, normalized=True)

    def map_monomials(self, f: Callable) -> "Element":
        """Linear extension of f: monomial -> Element."""
        out = None
        for m, c in self.terms.items():
            img = f(m).scale(c)
            out = img if out is None else out + img
        return out if out is not None else Element(self.alg, {}, normalized=True)

    def render(self) -> str:
        return render_terms(self.sorted_terms(), self.alg.render)

    __str__ = render

    def __repr__(self):
        return f"Element({self.render()!r})"


def render_coefficient_term(c, body: str, first: bool) -> str:
    neg = c < 0
    a = -c if neg else c
    if body == "1":
        text = str(a)
    elif a == 1:
        text = body
    else:
        text = f"{a}*{body}"
    if first:
        return f"-{text}" if neg else text
    return f" - {text}" if neg else f" + {text}"


def render_terms(items, render_key) -> str:
    parts = []
    for i, (m, c) in enumerate(items):
        parts.append(render_coefficient_term(c, render_key(m), i == 0))
    return "".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# term-level machinery shared by elements and tensors
#
# A "term map" is a dict from key tuples (one item per leg) to coefficients,
# together with a tuple of leg algebras.  Elements are the one-leg case.


def canonicalize(legs, raw: dict) -> dict:
    out: dict = {}
    for key, c in raw.items():
        if not c:
            continue
        nk = []
        for leg, item in zip(legs, key):
            ni = leg.normalize(item)
            if ni is None:
                break
            nk.append(ni)
        else:
            _acc(out, tuple(nk), as_rational(c))
    return out


def _sorted_keys(legs, terms):
    keys = [leg.sort_key for leg in legs]
    return sorted(terms, key=lambda t: tuple(f(x) for f, x in zip(keys, t)))


def collapse_pass(legs, terms: dict):
    """One sweep of R4 over every leg; returns (terms, number of collapses)."""
    groups: dict = {}
    for key in _sorted_keys(legs, terms):
        for i, leg in enumerate(legs):
            if getattr(leg, "kind", None) == "function":
                continue
            for gkey, member, repl in leg.collapse_groups(key[i]):
                gid = (i, key[:i], key[i + 1:], gkey)
                entry = groups.get(gid)
                if entry is None:
                    entry = groups[gid] = (repl, {})
                entry[1][member] = key
    used = set()
    out = dict(terms)
    count = 0
    for gid, (repl, members) in groups.items():
        i = gid[0]
        size = legs[i].group_size(gid[3]) if hasattr(legs[i], "group_size") else legs[i].k
        if len(members) < size or size == 0:
            continue
        keys = list(members.values())
        if any(key in used for key in keys):
            continue
        c = terms[keys[0]]
        if any(terms[key] != c for key in keys):
            continue
        for key in keys:
            used.add(key)
            out.pop(key)
        nrepl = legs[i].normalize(repl)
        if nrepl is not None:
            first = keys[0]
            _acc(out, first[:i] + (nrepl,) + first[i + 1:], c)
        count += 1
    return out, count


def reduce_terms(legs, terms: dict, budget: ReductionBudget | None = None, trace: bool = False):
    budget = budget or ReductionBudget()
    steps = []
    total = 0
    while True:
        terms, n = collapse_pass(legs, terms)
        if n == 0:
            break
        total += n
        if trace:
            steps.append(("R4", n))
        if total > budget.max_steps:
            return terms, Certificate.BUDGET_EXHAUSTED, steps
    cert = Certificate.PROVED_ZERO if not terms else Certificate.IRREDUCIBLE
    return terms, cert, steps


def closure_search(legs, terms: dict, policy: SearchPolicy, extra: Iterable = ()):
    """Is `terms` in the span of relation instances near its support?

    Returns a Certificate: PROVED_ZERO on success, BUDGET_EXHAUSTED when the
    vector cap (or the step budget, whichever is smaller) was hit, IRREDUCIBLE when the bounded search found nothing.
    Every vector added is a relation instance (or a caller-supplied ideal
    element), so success is a proof.
    """
    elim = SparseEliminator()
    seen = set()
    frontier = list(terms)
    nvec = 0
    cap = min(policy.max_vectors, policy.budget.max_steps)
    for vec in extra:
        vec = canonicalize(legs, vec)
        if vec and elim.add(vec):
            nvec += 1
            frontier.extend(vec)
    if elim.rank and elim.contains(terms):
        return Certificate.PROVED_ZERO
    for rnd in range(policy.rounds):
        tier = 0 if rnd == 0 else 1
        nxt = []
        for key in frontier:
            if (key, tier) in seen:
                continue
            seen.add((key, tier))
            for i, leg in enumerate(legs):
                rel = getattr(leg, "relations", None)
                if rel is None:
                    continue
                for local in rel(key[i], tier):
                    raw = {key[:i] + (m,) + key[i + 1:]: c for m, c in local.items()}
                    vec = canonicalize(legs, raw)
                    if not vec:
                        continue
                    if elim.add(vec):
                        nvec += 1
                        nxt.extend(vec)
                    if nvec > cap:
                        return Certificate.PROVED_ZERO if elim.contains(terms) else Certificate.BUDGET_EXHAUSTED
        if elim.contains(terms):
            return Certificate.PROVED_ZERO
        # the second round re-visits old keys at the higher tier
        frontier = list(dict.fromkeys(list(frontier) + nxt))
    return Certificate.IRREDUCIBLE


def prove_terms(legs, terms: dict, policy: SearchPolicy | None = None, extra=(), refine_fn=None):
    """Shared driver for prove_zero on elements and tensors."""
    policy = policy or SearchPolicy()
    reduced, cert, steps = reduce_terms(legs, terms, policy.budget)
    if cert is Certificate.PROVED_ZERO:
        return {}, cert, steps
    last = cert
    for strategy in policy.strategies:
        if strategy == "collapse":
            continue
        if strategy == "refine" and refine_fn is not None:
            for candidate in refine_fn(reduced, policy.refine_levels):
                r, c, _ = reduce_terms(legs, candidate, policy.budget)
                if c is Certificate.PROVED_ZERO:
                    steps.append(("refine", 1))
                    return {}, c, steps
        elif strategy == "linear":
            c = closure_search(legs, reduced, policy, extra)
            if c is Certificate.PROVED_ZERO:
                steps.append(("linear", 1))
                return {}, c, steps
            if c is Certificate.BUDGET_EXHAUSTED:
                last = c
    return reduced, last, steps


# ---------------------------------------------------------------------------
# public operations


def multiply(x: Element, y: Element) -> Element:
    return reduce(x * y).result


def adjoint(x: Element) -> Element:
    return x.adjoint()


def reduce(x: Element, budget: ReductionBudget | None = None, trace: bool = False) -> ReductionOutcome:
    legs = (x.alg,)
    terms = {(m,): c for m, c in x.terms.items()}
    out, cert, steps = reduce_terms(legs, terms, budget, trace)
    return ReductionOutcome(Element(x.alg, {k[0]: c for k, c in out.items()}, normalized=True), cert, steps)


def refine(x: Element, d: int) -> Element:
    """Rewrite every generator at depth d.

    A depth-m generator becomes k^-(d-m) times the sum of all its depth-d
    descendants a[us, vt]; summing the child-sum relation over the k^(d-m) row
    suffixes shows that is an identity.  The unit monomial is treated as
    a[e,e].
    """
    alg = x.alg
    k = alg.k
    if d < x.depth():
        raise ValueError(f"refinement depth {d} below element depth {x.depth()}")

    def expand(g: Gen):
        n = d - len(g.row)
        if n == 0:
            return [((g,), 1)]
        c = Fraction(1, k**n)
        sfx = enumerate_words(k, n)
        return [((Gen(g.row + s, g.col + t),), c) for s in sfx for t in sfx]

    out: dict = {}
    for m, c in x.terms.items():
        factors = m if m else (Gen(EMPTY, EMPTY),)
        if d == 0:
            _acc(out, m, c)
            continue
        for combo in itertools.product(*(expand(g) for g in factors)):
            mono = tuple(itertools.chain.from_iterable(f for f, _ in combo))
            coef = c
            for _, cc in combo:
                coef = coef * cc
            _acc(out, mono, coef)
    return Element(alg, out)


def _refine_candidates(alg):
    def gen(terms: dict, levels: int):
        el = Element(alg, {key[0]: c for key, c in terms.items()}, normalized=True)
        d0 = el.depth()
        for d in range(max(d0, 1), d0 + levels + 1):
            r = refine(el, d)
            yield {(m,): c for m, c in r.terms.items()}
    return gen


def prove_zero(x: Element, strategy: SearchPolicy | None = None, extra=()) -> ReductionOutcome:
    legs = (x.alg,)
    terms = {(m,): c for m, c in x.terms.items()}
    extra_terms = [{(m,): c for m, c in e.terms.items()} if isinstance(e, Element) else e for e in extra]
    refine_fn = _refine_candidates(x.alg) if isinstance(x.alg, TreeAlgebra) else None
    out, cert, steps = prove_terms(legs, terms, strategy, extra_terms, refine_fn)
    return ReductionOutcome(Element(x.alg, {k[0]: c for k, c in out.items()}, normalized=True), cert, steps)


def substitute(x: Element, image, one, mul=None, add=None, scale=None):
    """Multiplicative-linear extension of a generator assignment.

    `image` is a mapping or callable Gen -> T; `one` is the unit of T.
    """
    mul = mul or (lambda s, t: s * t)
    add = add or (lambda s, t: s + t)
    scale = scale or (lambda c, t: c * t)
    lookup = image.__getitem__ if hasattr(image, "__getitem__") and not callable(image) else image
    total = None
    for m, c in x.sorted_terms():
        val = one
        for g in m:
            try:
                img = lookup(g)
            except KeyError:
                raise ValueError(f"missing image for generator {g}") from None
            val = mul(val, img)
        term = scale(c, val)
        total = term if total is None else add(total, term)
    if total is None:
        total = scale(0, one)
    return total


def parse(text: str, k: int, alg: TreeAlgebra | None = None) -> Element:
    from .syntax import parse_element

    return parse_element(text, alg or TreeAlgebra(k))
