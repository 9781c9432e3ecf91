"""Restrictions rho_x, rho_w, the maps sigma_x, and psi: C(X) (x) A -> A (x) C(X)."""

from __future__ import annotations

import time
from functools import lru_cache

from .certify import certify
from .engine import Element, Gen, SearchPolicy, TreeAlgebra, _acc
from .hopf import all_generators, antipode, delta, random_monomials
from .report import VerificationReport
from .syntax import parse_element
from .tensor import (
    FunctionLeg,
    TensorElement,
    apply_on_leg,
    apply_on_legs,
    multiply_pointwise,
    tensor_product,
)
from .words import enumerate_words, render_word


def _extend(x: Element, image) -> Element:
    """Multiplicative-linear extension of a generator map Gen -> Element."""
    alg = x.alg
    one = alg.one()
    out = alg.zero()
    for m, c in x.terms.items():
        val = one
        for g in m:
            val = val * image(g)
            if not val:
                break
        out = out + val.scale(c)
    return out


@lru_cache(maxsize=100_000)
def _rho_gen(alg: TreeAlgebra, x: int, g: Gen) -> Element:
    return Element(alg, {(Gen((y,) + g.row, (x,) + g.col),): 1 for y in range(alg.k)})


@lru_cache(maxsize=100_000)
def _sigma_gen(alg: TreeAlgebra, x: int, g: Gen) -> Element:
    return Element(alg, {(Gen((x,) + g.row, (y,) + g.col),): 1 for y in range(alg.k)})


def rho(x: int, e: Element) -> Element:
    """rho_x(a[u,v]) = sum_y a[yu, xv]."""
    if not 0 <= x < e.alg.k:
        raise ValueError(f"letter {x} out of range")
    return _extend(e, lambda g: _rho_gen(e.alg, x, g))


def rho_word(w, e: Element) -> Element:
    """rho_w = rho_{w_1} o ... o rho_{w_n}; rho of the empty word is the identity."""
    out = e
    for x in reversed(tuple(w)):
        out = rho(x, out)
    return out


def rho_closed_form(w, e: Element) -> Element:
    """rho_w(a[u,v]) = sum over z in X^|w| of a[zu, wv], extended multiplicatively."""
    w = tuple(w)
    alg = e.alg
    zs = enumerate_words(alg.k, len(w))
    return _extend(e, lambda g: Element(alg, {(Gen(z + g.row, w + g.col),): 1 for z in zs}))


def sigma(x: int, e: Element) -> Element:
    """sigma_x(a[u,v]) = sum_y a[xu, yv]."""
    if not 0 <= x < e.alg.k:
        raise ValueError(f"letter {x} out of range")
    return _extend(e, lambda g: _sigma_gen(e.alg, x, g))


def psi_monomial(alg: TreeAlgebra, x: int, m: tuple) -> TensorElement:
    """psi(p_x (x) m) = sum_y a[x,y] prod_i a[x u_i, y v_i] (x) p_y."""
    F = FunctionLeg(1, alg.k)
    out: dict = {}
    for y in range(alg.k):
        factors = (Gen((x,), (y,)),) + tuple(Gen((x,) + g.row, (y,) + g.col) for g in m)
        _acc(out, (factors, (y,)), 1)
    return TensorElement((alg, F), out)


def psi(t: TensorElement) -> TensorElement:
    """psi on a tensor with legs [C(X), A]; the result has legs [A, C(X)]."""
    if len(t.legs) != 2 or not isinstance(t.legs[0], FunctionLeg) or t.legs[0].n != 1:
        raise ValueError("psi needs a tensor with legs [C(X), algebra]")
    alg = t.legs[1]
    if not isinstance(alg, TreeAlgebra):
        raise ValueError("psi needs an algebra leg of the tree algebra")
    return apply_on_legs(t, 0, 2, lambda key: psi_monomial(alg, key[0][0], key[1]), (alg, t.legs[0]))


def psi_on_legs(t: TensorElement, start: int) -> TensorElement:
    """Apply psi to legs (start, start+1) of a longer tensor."""
    alg = t.legs[start + 1]
    return apply_on_legs(t, start, 2, lambda key: psi_monomial(alg, key[0][0], key[1]), (alg, t.legs[start]))


def _pt(f: Element, a: Element) -> TensorElement:
    return tensor_product(f, a)


# -- suites


def _finish(report: VerificationReport, start: float) -> VerificationReport:
    report.duration = time.perf_counter() - start
    return report


RESTRICTION_EXAMPLE = ("a[1,2]", "a[01,12] + a[11,12] + a[21,12]")


def check_relations_preserved(report, alg, image, label: str, depth: int, policy=None, target=None):
    """Is {b_{u,v} = image(a[u,v])} a family satisfying the defining relations?

    `target` is the algebra the images live in (default: alg itself).
    """
    k = alg.k
    target = target or alg
    one = alg.one()
    tone = target.one()
    certify(report, f"{label}(1) = 1", image(one), tone, policy)
    for n in range(1, depth + 1):
        ws = enumerate_words(k, n)
        for u in ws:
            for v in ws:
                b = image(alg.gen(u, v))
                tag = f"{label} b[{render_word(u)},{render_word(v)}]"
                certify(report, f"{tag}* = b", b.adjoint(), b, policy)
                certify(report, f"{tag}^2 = b", b * b, b, policy)
    for n in range(0, depth):
        ws = enumerate_words(k, n)
        for u in ws:
            for v in ws:
                b = image(alg.gen(u, v)) if n else tone
                for y in range(k):
                    rows = sum((image(alg.gen(u + (y,), v + (z,))) for z in range(k)), target.zero())
                    cols = sum((image(alg.gen(u + (z,), v + (y,))) for z in range(k)), target.zero())
                    tag = f"{label} [{render_word(u)},{render_word(v)}] letter {y}"
                    certify(report, f"{tag} row sum", rows, b, policy)
                    certify(report, f"{tag} column sum", cols, b, policy)


def verify_restriction(k: int, d: int, word_length: int = 2, policy: SearchPolicy | None = None,
                       relation_depth: int | None = None) -> VerificationReport:
    """Worked k=3 restriction example, closed form of rho_w, and rho_x as a homomorphism."""
    start = time.perf_counter()
    alg = TreeAlgebra(k)
    report = VerificationReport("restriction", {"k": k, "d": d, "word_length": word_length})
    if k >= 3:
        lhs = rho(1, parse_element(RESTRICTION_EXAMPLE[0], alg))
        rhs = parse_element(RESTRICTION_EXAMPLE[1], alg)
        report.exact("restriction example rho_1(a[1,2]) (syntactic)", lhs.render(), rhs.render())
        certify(report, "restriction example rho_1(a[1,2])", lhs, rhs, policy)
    for n in range(0, word_length + 1):
        for w in enumerate_words(k, n):
            for g in all_generators(alg, d):
                a = Element(alg, {(g,): 1})
                certify(report, f"rho_{render_word(w)} closed form {g}", rho_word(w, a), rho_closed_form(w, a), policy)
    rd = d if relation_depth is None else relation_depth
    for x in range(k):
        check_relations_preserved(report, alg, lambda e, x=x: rho(x, e), f"rho_{x}", rd, policy)
    return _finish(report, start)


def verify_sigma_kappa(k: int, d: int, policy: SearchPolicy | None = None) -> VerificationReport:
    start = time.perf_counter()
    alg = TreeAlgebra(k)
    report = VerificationReport("sigma-kappa", {"k": k, "d": d})
    for x in range(k):
        for g in all_generators(alg, d):
            a = Element(alg, {(g,): 1})
            certify(report, f"sigma_{x} = kappa rho_{x} kappa on {g}", antipode(rho(x, antipode(a))), sigma(x, a), policy)
        check_relations_preserved(report, alg, lambda e, x=x: sigma(x, e), f"sigma_{x}", d, policy)
    return _finish(report, start)


def _exchange_sides(alg: TreeAlgebra, x: int, a: Element):
    F = FunctionLeg(1, alg.k)
    t = _pt(F.p((x,)), a)
    lhs = apply_on_leg(psi(t), 0, lambda m: delta(Element(alg, {m: 1}, normalized=True)), (alg, alg))
    step = apply_on_leg(t, 1, lambda m: delta(Element(alg, {m: 1}, normalized=True)), (alg, alg))
    step = psi_on_legs(step, 0)
    rhs = psi_on_legs(step, 1)
    return lhs, rhs


def verify_psi_axiom(k: int, d: int, g: int, seed: int = 0, samples: int = 20,
                     policy: SearchPolicy | None = None) -> VerificationReport:
    """Exchange axiom, unitality, the rho read-off and the Podles-type identity for psi."""
    start = time.perf_counter()
    alg = TreeAlgebra(k)
    F = FunctionLeg(1, k)
    report = VerificationReport("psi-axiom", {"k": k, "d": d, "g": g, "seed": seed, "samples": samples})
    elements = [Element(alg, {(gen,): 1}) for gen in all_generators(alg, d)]
    elements += random_monomials(alg, seed, d, g, samples)
    for a in elements:
        for x in range(k):
            lhs, rhs = _exchange_sides(alg, x, a)
            certify(report, f"exchange p[{x}] (x) {a}", lhs, rhs, policy)
        total = psi(_pt(F.one(), a))
        expect = None
        for x in range(k):
            term = _pt(rho(x, a), F.p((x,)))
            expect = term if expect is None else expect + term
        certify(report, f"psi(1 (x) {a}) = sum_x rho_x(a) (x) p_x", total, expect, policy)
    certify(report, "psi(1 (x) 1) = 1 (x) 1", psi(_pt(F.one(), alg.one())), _pt(alg.one(), F.one()), policy)
    # multiplicativity within a fixed p_x
    sample = random_monomials(alg, seed + 1, d, 1, max(4, samples // 2))
    for i in range(0, len(sample) - 1, 2):
        a, b = sample[i], sample[i + 1]
        for x in range(k):
            lhs = psi(_pt(F.p((x,)), a * b))
            rhs = multiply_pointwise(psi(_pt(F.p((x,)), a)), psi(_pt(F.p((x,)), b)))
            certify(report, f"psi multiplicative p[{x}] {a} | {b}", lhs, rhs, policy)
    # q(a) (x) p_z = sum_x psi(p_x (x) 1)(a[x,z] a (x) 1)
    for a in elements[: len(elements) - samples]:
        for z in range(k):
            total = None
            for x in range(k):
                left = psi(_pt(F.p((x,)), alg.one()))
                right = _pt(alg.gen((x,), (z,)) * a, F.one())
                term = multiply_pointwise(left, right)
                total = term if total is None else total + term
            certify(report, f"density a (x) p[{z}] for {a}", _pt(a, F.p((z,))), total, policy)
    return _finish(report, start)


def delta_rho_rhs(w, a: Element) -> TensorElement:
    """sum_y (1 (x) a[y,w]) (rho_y (x) rho_w)(Delta(a))."""
    alg = a.alg
    w = tuple(w)
    d = delta(a)
    total = None
    for y in enumerate_words(alg.k, len(w)):
        mapped = apply_on_leg(d, 0, lambda m: rho_word(y, Element(alg, {m: 1}, normalized=True)), (alg,))
        mapped = apply_on_leg(mapped, 1, lambda m: rho_word(w, Element(alg, {m: 1}, normalized=True)), (alg,))
        left = tensor_product(alg.one(), alg.gen(y, w))
        term = multiply_pointwise(left, mapped)
        total = term if total is None else total + term
    return total


def verify_delta_rho(k: int, d: int, g: int, word_length: int = 2, seed: int = 0, samples: int = 10,
                     policy: SearchPolicy | None = None) -> VerificationReport:
    """(Delta o rho_w)(a) = sum_y (1 (x) a[y,w])(rho_y (x) rho_w)(Delta(a)), 1 <= |w| <= word_length."""
    start = time.perf_counter()
    alg = TreeAlgebra(k)
    report = VerificationReport("delta-rho", {"k": k, "d": d, "g": g, "word_length": word_length,
                                              "seed": seed, "samples": samples})
    elements = [Element(alg, {(gen,): 1}) for gen in all_generators(alg, d)]
    elements += random_monomials(alg, seed, d, g, samples)
    for n in range(1, word_length + 1):
        for w in enumerate_words(k, n):
            for a in elements:
                certify(report, f"delta rho_{render_word(w)} {a}", delta(rho_word(w, a)), delta_rho_rhs(w, a), policy)
    return _finish(report, start)
