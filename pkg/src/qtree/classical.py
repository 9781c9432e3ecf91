"""Exact classical oracle: tree automorphisms as portraits.

A depth-d portrait labels every vertex of length < d with a permutation of
X.  It acts by g.(x w) = (g.x)(g|_x . w), the letter at position i being the
label at w[:i] applied to w[i].  Elements of A_X evaluate on portraits
through the indicator functions f_{u,v}(g) = [g.v = u].
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .engine import Element, Gen, TreeAlgebra
from .linalg import SparseEliminator
from .report import VerificationReport
from .words import Alphabet, Word, enumerate_words, render_word, words_upto

Permutation = tuple  # image array

MAX_PORTRAITS = 10**6


def identity_perm(k: int) -> Permutation:
    return tuple(range(k))


def compose_perm(s: Permutation, t: Permutation) -> Permutation:
    """s after t."""
    return tuple(s[i] for i in t)


def invert_perm(s: Permutation) -> Permutation:
    out = [0] * len(s)
    for i, j in enumerate(s):
        out[j] = i
    return tuple(out)


def check_perm(s: Sequence[int], k: int) -> Permutation:
    s = tuple(s)
    if sorted(s) != list(range(k)):
        raise ValueError(f"{s} is not a permutation of {k} letters")
    return s


def cycle_perm(k: int) -> Permutation:
    return tuple((i + 1) % k for i in range(k))


@lru_cache(maxsize=None)
def _nodes(k: int, d: int) -> tuple:
    return tuple(words_upto(k, d - 1)) if d > 0 else ()


@lru_cache(maxsize=None)
def _node_index(k: int, d: int) -> dict:
    return {w: i for i, w in enumerate(_nodes(k, d))}


@dataclass(frozen=True)
class Portrait:
    k: int
    depth: int
    labels: tuple  # one permutation per internal vertex, in words_upto order

    def label(self, w: Word) -> Permutation:
        return self.labels[_node_index(self.k, self.depth)[tuple(w)]]

    @cached_property
    def table(self) -> dict:
        """Action on every vertex of length <= depth."""
        out = {(): ()}
        for w in _nodes(self.k, self.depth):
            img = out[w]
            perm = self.label(w)
            for x in range(self.k):
                out[w + (x,)] = img + (perm[x],)
        return out

    @cached_property
    def inverse_table(self) -> dict:
        return {v: w for w, v in self.table.items()}

    def to_json(self) -> dict:
        return {render_word(w): list(p) for w, p in zip(_nodes(self.k, self.depth), self.labels)}

    @classmethod
    def from_json(cls, k: int, depth: int, data: dict) -> "Portrait":
        labels = []
        for w in _nodes(k, depth):
            key = render_word(w)
            labels.append(check_perm(data.get(key, range(k)), k))
        return cls(k, depth, tuple(labels))

    @classmethod
    def from_labels(cls, k: int, depth: int, labels: dict) -> "Portrait":
        ident = identity_perm(k)
        return cls(k, depth, tuple(check_perm(labels.get(w, ident), k) for w in _nodes(k, depth)))


def identity(k: int, d: int) -> Portrait:
    return Portrait(k, d, (identity_perm(k),) * len(_nodes(k, d)))


def act(g: Portrait, w: Word) -> Word:
    w = tuple(w)
    if len(w) > g.depth:
        raise ValueError(f"word {render_word(w)} longer than portrait depth {g.depth}")
    return g.table[w]


def act_inverse(g: Portrait, w: Word) -> Word:
    if len(w) > g.depth:
        raise ValueError(f"word {render_word(w)} longer than portrait depth {g.depth}")
    return g.inverse_table[tuple(w)]


def section(g: Portrait, w: Word) -> Portrait:
    w = tuple(w)
    if len(w) > g.depth:
        raise ValueError(f"word {render_word(w)} longer than portrait depth {g.depth}")
    d = g.depth - len(w)
    return Portrait(g.k, d, tuple(g.label(w + v) for v in _nodes(g.k, d)))


def compose(g: Portrait, h: Portrait) -> Portrait:
    """The automorphism w -> g.(h.w); (gh)|_w = g|_{h.w} h|_w."""
    if (g.k, g.depth) != (h.k, h.depth):
        raise ValueError("portraits of different shapes")
    labels = tuple(compose_perm(g.label(h.table[w]), h.label(w)) for w in _nodes(g.k, g.depth))
    return Portrait(g.k, g.depth, labels)


def invert(g: Portrait) -> Portrait:
    labels = tuple(invert_perm(g.label(g.inverse_table[w])) for w in _nodes(g.k, g.depth))
    return Portrait(g.k, g.depth, labels)


def aut_order(k: int, d: int) -> int:
    """|Aut(X^[d])| by the wreath recursion N(d+1) = N(d)^k * k!."""
    n = 1
    for _ in range(d):
        n = n**k * math.factorial(k)
    return n


def _check_cap(count: int):
    if count > MAX_PORTRAITS:
        raise ValueError(f"enumeration of {count} portraits exceeds the cap of {MAX_PORTRAITS}")


def enumerate_aut(k: int, d: int) -> list[Portrait]:
    Alphabet(k)
    perms = list(itertools.permutations(range(k)))
    nodes = _nodes(k, d)
    _check_cap(len(perms) ** len(nodes))
    return [Portrait(k, d, labels) for labels in itertools.product(perms, repeat=len(nodes))]


# -- finitely constrained groups


def close_subgroup(gens: Iterable[Sequence[int]], k: int) -> tuple:
    """Subgroup of Sym(k) generated by gens, sorted."""
    group = {identity_perm(k)}
    frontier = [check_perm(s, k) for s in gens]
    while frontier:
        s = frontier.pop()
        if s in group:
            continue
        group.add(s)
        for t in list(group):
            for u in (compose_perm(s, t), compose_perm(t, s)):
                if u not in group:
                    frontier.append(u)
    return tuple(sorted(group))


@dataclass(frozen=True)
class SubgroupSpec:
    k: int
    elements: tuple
    name: str = "custom"

    @classmethod
    def generated(cls, k: int, gens: Iterable[Sequence[int]], name: str = "custom") -> "SubgroupSpec":
        return cls(k, close_subgroup(gens, k), name)

    @classmethod
    def explicit(cls, k: int, elements: Iterable[Sequence[int]], name: str = "custom") -> "SubgroupSpec":
        elems = tuple(sorted({check_perm(s, k) for s in elements}))
        if close_subgroup(elems, k) != elems:
            raise ValueError("permutation list is not a subgroup")
        return cls(k, elems, name)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, s):
        return tuple(s) in self.elements


def preset_subgroup(name: str, k: int) -> SubgroupSpec:
    if name == "trivial":
        return SubgroupSpec(k, (identity_perm(k),), name)
    if name == "full":
        return SubgroupSpec(k, tuple(itertools.permutations(range(k))), name)
    if name == "cyclic":
        return SubgroupSpec.generated(k, [cycle_perm(k)], name)
    if name == "klein":
        if k != 4:
            raise ValueError("the klein preset needs k=4")
        return SubgroupSpec.explicit(4, [(0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0)], name)
    raise ValueError(f"unknown subgroup preset {name!r}")


def gp_order(P: SubgroupSpec, n: int) -> int:
    return len(P) ** len(_nodes(P.k, n))


def enumerate_GP(P: SubgroupSpec, n: int) -> list[Portrait]:
    """Depth-n portraits with every label in P (the truncation r_n(G_P))."""
    nodes = _nodes(P.k, n)
    _check_cap(len(P) ** len(nodes))
    return [Portrait(P.k, n, labels) for labels in itertools.product(P.elements, repeat=len(nodes))]


# -- indicator evaluation


def indicator_eval(gen: Gen, g: Portrait) -> int:
    u, v = gen
    if len(u) > g.depth:
        raise ValueError(f"generator {gen} deeper than portrait depth {g.depth}")
    return 1 if g.table[v] == u else 0


def abelian_eval(e: Element, g: Portrait):
    total = 0
    for m, c in e.terms.items():
        for gen in m:
            if not indicator_eval(gen, g):
                break
        else:
            total += c
    return total


def tensor_eval(t, points: Sequence):
    """Evaluate a TensorElement at one point per leg.

    Algebra legs take a Portrait, function legs take a word (p_w(z) = [w=z]).
    Other leg kinds must provide `evaluate(item, point)`.
    """
    total = 0
    for key, c in t.terms.items():
        val = c
        for leg, item, pt in zip(t.legs, key, points):
            if leg.kind == "function":
                f = 1 if item == tuple(pt) else 0
            elif hasattr(leg, "evaluate"):
                f = leg.evaluate(item, pt)
            else:
                f = 1 if all(indicator_eval(gen, pt) for gen in item) else 0
            if not f:
                val = 0
                break
            val = val * f
        total += val
    return total


def indicator_vector(gen: Gen, group: Sequence[Portrait]) -> int:
    """Bitmask over group indices of {g : g.v = u}."""
    u, v = gen
    mask = 0
    for i, g in enumerate(group):
        if g.table[v] == u:
            mask |= 1 << i
    return mask


def indicator_span_rank(group: Sequence[Portrait], max_depth: int) -> int:
    """Rank of the algebra generated by {f_{u,v}: |u| <= max_depth} on the group."""
    k = group[0].k
    gens = [Gen(u, v) for n in range(1, max_depth + 1)
            for u in enumerate_words(k, n) for v in enumerate_words(k, n)]
    masks = sorted({indicator_vector(gen, group) for gen in gens})
    full = (1 << len(group)) - 1
    elim = SparseEliminator()

    def vec(mask):
        return {i: 1 for i in range(len(group)) if mask >> i & 1}

    elim.add(vec(full))
    frontier = [full]
    seen = {full}
    while frontier:
        nxt = []
        for m in frontier:
            for f in masks:
                p = m & f
                if p in seen or not p:
                    continue
                seen.add(p)
                if elim.add(vec(p)):
                    nxt.append(p)
        frontier = nxt
    return elim.rank


def verify_abelianization(k: int, d: int) -> VerificationReport:
    """Defining relations and orthogonality pointwise on Aut(X^[d]), plus span rank."""
    report = VerificationReport("abelianization", {"k": k, "d": d})
    group = enumerate_aut(k, d)
    report.exact("group order = wreath recursion", len(group), aut_order(k, d))
    bad = {"unit": 0, "row-sum": 0, "col-sum": 0, "row-orth": 0, "col-orth": 0}
    for g in group:
        if indicator_eval(Gen((), ()), g) != 1:
            bad["unit"] += 1
        for n in range(d):
            ws = enumerate_words(k, n)
            for u in ws:
                for v in ws:
                    f = indicator_eval(Gen(u, v), g)
                    for x in range(k):
                        if sum(indicator_eval(Gen(u + (x,), v + (y,)), g) for y in range(k)) != f:
                            bad["row-sum"] += 1
                        if sum(indicator_eval(Gen(u + (z,), v + (x,)), g) for z in range(k)) != f:
                            bad["col-sum"] += 1
        for n in range(1, d + 1):
            ws = enumerate_words(k, n)
            for w in ws:
                col = [indicator_eval(Gen(u, w), g) for u in ws]
                row = [indicator_eval(Gen(w, v), g) for v in ws]
                if sum(col) != 1:
                    bad["col-orth"] += 1
                if sum(row) != 1:
                    bad["row-orth"] += 1
    for name, count in bad.items():
        report.exact(f"pointwise {name} violations", count, 0)
    rank = indicator_span_rank(group, d)
    report.exact("indicator span rank = group order", rank, len(group))
    report.notes["rank"] = rank
    return report


# -- duality between the Hopf structure and the group law


def verify_duality(k: int, d: int, pairs: bool = True) -> VerificationReport:
    """Indicator evaluation turns Delta, kappa, epsilon, rho_x, sigma_x, psi and
    gamma_n into composition, inversion, the identity, sections and the action.

    Exhaustive over Aut(X^[d]) (and pairs of its elements for Delta).
    """
    from .hopf import antipode, counit, delta, gamma
    from .selfsim import psi, rho, sigma
    from .tensor import FunctionLeg, tensor_product

    report = VerificationReport("duality", {"k": k, "d": d})
    alg = TreeAlgebra(k)
    group = enumerate_aut(k, d)
    gens = [alg.gen(u, v) for n in range(1, d + 1) for u in enumerate_words(k, n) for v in enumerate_words(k, n)]
    elements = gens + ([x * y for x in gens for y in gens if x * y] if pairs else [])
    ident = identity(k, d)
    bad = {"Delta": 0, "kappa": 0, "epsilon": 0}
    for e in elements:
        de = delta(e)
        ke = antipode(e)
        if counit(e) != abelian_eval(e, ident):
            bad["epsilon"] += 1
        for g in group:
            if abelian_eval(ke, g) != abelian_eval(e, invert(g)):
                bad["kappa"] += 1
            for h in group:
                if tensor_eval(de, (g, h)) != abelian_eval(e, compose(g, h)):
                    bad["Delta"] += 1
    report.exact("Delta(a)(g,h) = a(gh) mismatches", bad["Delta"], 0)
    report.exact("kappa(a)(g) = a(g^-1) mismatches", bad["kappa"], 0)
    report.exact("epsilon(a) = a(id) mismatches", bad["epsilon"], 0)
    shallow = [e for e in elements if e.depth() <= d - 1]
    bad_rho = bad_sigma = bad_psi = 0
    F = FunctionLeg(1, k)
    for e in shallow:
        for x in range(k):
            re_, se = rho(x, e), sigma(x, e)
            pe = psi(tensor_product(F.p((x,)), e))
            for g in group:
                if abelian_eval(re_, g) != abelian_eval(e, section(g, (x,))):
                    bad_rho += 1
                if abelian_eval(se, g) != abelian_eval(e, section(g, act_inverse(g, (x,)))):
                    bad_sigma += 1
                for y in range(k):
                    expect = abelian_eval(e, section(g, (y,))) if act(g, (y,)) == (x,) else 0
                    if tensor_eval(pe, (g, (y,))) != expect:
                        bad_psi += 1
    report.exact("rho_x(a)(g) = a(g|_x) mismatches", bad_rho, 0)
    report.exact("sigma_x(a)(g) = a(g|_{g^-1 x}) mismatches", bad_sigma, 0)
    report.exact("psi(p_x (x) a)(g,y) = [g.y = x] a(g|_y) mismatches", bad_psi, 0)
    bad_gamma = 0
    for n in range(1, d + 1):
        Fn = FunctionLeg(n, k)
        for w in enumerate_words(k, n):
            t = gamma(n, Fn.p(w), alg)
            for g in group:
                for z in enumerate_words(k, n):
                    if tensor_eval(t, (g, z)) != (1 if act(g, z) == w else 0):
                        bad_gamma += 1
    report.exact("gamma_n(p_w)(g,z) = p_w(g.z) mismatches", bad_gamma, 0)
    return report


def closure_violations(group: Sequence[Portrait], below: Sequence[Portrait] | None = None) -> dict:
    """Counts of products, inverses and first-level sections falling outside the set.

    `below` is the depth-(n-1) set that sections must land in.
    """
    members = frozenset(group)
    out = {"composition": 0, "inversion": 0, "section": 0}
    for g in group:
        if invert(g) not in members:
            out["inversion"] += 1
        for h in group:
            if compose(g, h) not in members:
                out["composition"] += 1
    if below is not None:
        lower = frozenset(below)
        k = group[0].k if group else 0
        out["section"] = sum(1 for g in group for x in range(k) if section(g, (x,)) not in lower)
    return out


def verify_gp_counts(P: SubgroupSpec, max_depth: int) -> VerificationReport:
    """|r_n(G_P)| = |P|^((k^n-1)/(k-1)) by enumeration, plus closure of each level."""
    report = VerificationReport("gp-counts", {"k": P.k, "preset": P.name, "max_depth": max_depth})
    previous = enumerate_GP(P, 0)
    for n in range(1, max_depth + 1):
        level = enumerate_GP(P, n)
        report.exact(f"|r_{n}(G_P)| enumerated = |P|^((k^n-1)/(k-1))", len(level), len(P) ** ((P.k**n - 1) // (P.k - 1)))
        for kind, count in closure_violations(level, previous).items():
            report.exact(f"r_{n}(G_P) closed under {kind}", count, 0)
        previous = level
    return report
