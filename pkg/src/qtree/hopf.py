"""Comultiplication, counit, antipode and the coactions gamma_n on C(X^n)."""

from __future__ import annotations

import itertools
import random
import time
from functools import lru_cache

from .certify import certify
from .engine import Element, Gen, SearchPolicy, TreeAlgebra, _acc
from .report import VerificationReport
from .tensor import FunctionLeg, TensorElement, apply_on_leg, contract_leg, include, merge_legs, multiply_pointwise
from .words import enumerate_words, render_word


@lru_cache(maxsize=200_000)
def _delta_monomial(alg: TreeAlgebra, m: tuple) -> TensorElement:
    k = alg.k
    choices = [enumerate_words(k, len(g.row)) for g in m]
    out: dict = {}
    for ws in itertools.product(*choices):
        left = tuple(Gen(g.row, w) for g, w in zip(m, ws))
        right = tuple(Gen(w, g.col) for g, w in zip(m, ws))
        _acc(out, (left, right), 1)
    return TensorElement((alg, alg), out)


def delta_monomial(alg: TreeAlgebra, m: tuple) -> TensorElement:
    return _delta_monomial(alg, m)


def delta(x: Element) -> TensorElement:
    """Delta(a[u,v]) = sum_w a[u,w] (x) a[w,v], extended multiplicatively."""
    alg = x.alg
    out: dict = {}
    for m, c in x.terms.items():
        for key, c2 in delta_monomial(alg, m).terms.items():
            _acc(out, key, c * c2)
    return TensorElement((alg, alg), out, normalized=True)


def delta_on_leg(t: TensorElement, i: int) -> TensorElement:
    alg = t.legs[i]
    return apply_on_leg(t, i, lambda m: delta_monomial(alg, m), (alg, alg))


def counit_monomial(m: tuple) -> int:
    return 1 if all(g.row == g.col for g in m) else 0


def counit(x: Element):
    """epsilon(a[u,v]) = delta_{u,v}."""
    return sum((c for m, c in x.terms.items() if counit_monomial(m)), 0)


def antipode_monomial(alg: TreeAlgebra, m: tuple) -> Element:
    return Element(alg, {tuple(Gen(g.col, g.row) for g in reversed(m)): 1})


def antipode(x: Element) -> Element:
    """kappa(a[u,v]) = a[v,u], extended as an anti-homomorphism."""
    out: dict = {}
    for m, c in x.terms.items():
        nm = x.alg.normalize(tuple(Gen(g.col, g.row) for g in reversed(m)))
        if nm is not None:
            _acc(out, nm, c)
    return Element(x.alg, out, normalized=True)


def gamma(n: int, f: Element, alg: TreeAlgebra | None = None) -> TensorElement:
    """gamma_n(p_w) = sum_{w'} a[w,w'] (x) p_{w'}."""
    leg = f.alg
    if not isinstance(leg, FunctionLeg) or leg.n != n or n < 1:
        raise ValueError(f"gamma_{n} needs an element of C(X^{n}) with n >= 1")
    alg = alg or TreeAlgebra(leg.k)
    out: dict = {}
    for w, c in f.terms.items():
        for w2 in enumerate_words(leg.k, n):
            _acc(out, ((Gen(w, w2),), w2), c)
    return TensorElement((alg, leg), out, normalized=True)


# -- random test data


def random_monomial(alg: TreeAlgebra, rng: random.Random, depth: int, degree: int) -> Element:
    k = alg.k
    factors = []
    for _ in range(rng.randint(1, degree)):
        n = rng.randint(1, depth)
        u = tuple(rng.randrange(k) for _ in range(n))
        v = tuple(rng.randrange(k) for _ in range(n))
        factors.append(Gen(u, v))
    return Element(alg, {tuple(factors): 1})


def random_monomials(alg: TreeAlgebra, seed: int, depth: int, degree: int, count: int, nonzero: bool = True):
    rng = random.Random(seed)
    out = []
    tries = 0
    while len(out) < count and tries < 50 * count:
        tries += 1
        m = random_monomial(alg, rng, depth, degree)
        if m or not nonzero:
            out.append(m)
    return out


def all_generators(alg: TreeAlgebra, depth: int, min_depth: int = 1):
    for n in range(min_depth, depth + 1):
        for g in alg.generators(n):
            yield g


def _gen_el(alg, g) -> Element:
    return Element(alg, {(g,): 1}, normalized=True)


# -- suites


def _coassoc(report, alg, x: Element, name: str, policy):
    d = delta(x)
    lhs = delta_on_leg(d, 0)
    rhs = delta_on_leg(d, 1)
    certify(report, name, lhs, rhs, policy)


def check_coassociativity(report, alg, depth, degree, seed, samples, policy=None):
    for g in all_generators(alg, depth):
        _coassoc(report, alg, _gen_el(alg, g), f"coassoc {g}", policy)
    for i, x in enumerate(random_monomials(alg, seed, depth, degree, samples)):
        _coassoc(report, alg, x, f"coassoc random#{i:03d} {x}", policy)


def check_unitarity(report, alg, depth, policy=None):
    k = alg.k
    one = alg.one()
    for n in range(1, depth + 1):
        ws = enumerate_words(k, n)
        for u in ws:
            for v in ws:
                rhs = one if u == v else alg.zero()
                rows = Element(alg, {(Gen(u, w), Gen(v, w)): 1 for w in ws})
                cols = Element(alg, {(Gen(w, u), Gen(w, v)): 1 for w in ws})
                tag = f"{render_word(u)},{render_word(v)}"
                certify(report, f"unitarity a a^T [{tag}]", rows, rhs, policy)
                certify(report, f"unitarity a^T a [{tag}]", cols, rhs, policy)


def check_counit_antipode(report, alg, depth, policy=None):
    one = alg.one()
    for g in all_generators(alg, depth):
        a = _gen_el(alg, g)
        d = delta(a)
        left = contract_leg(d, 0, counit_monomial).to_element()
        right = contract_leg(d, 1, counit_monomial).to_element()
        certify(report, f"counit (eps x id)Delta {g}", left, a, policy)
        certify(report, f"counit (id x eps)Delta {g}", right, a, policy)
        eps = one.scale(counit(a))
        k1 = merge_legs(apply_on_leg(d, 0, lambda m: antipode_monomial(alg, m)), 0).to_element()
        k2 = merge_legs(apply_on_leg(d, 1, lambda m: antipode_monomial(alg, m)), 0).to_element()
        certify(report, f"antipode m(kappa x id)Delta {g}", k1, eps, policy)
        certify(report, f"antipode m(id x kappa)Delta {g}", k2, eps, policy)


def _finish(report: VerificationReport, start: float) -> VerificationReport:
    report.duration = time.perf_counter() - start
    return report


def verify_cqg_axioms(k: int, d: int, g: int, seed: int = 0, samples: int = 200,
                      policy: SearchPolicy | None = None) -> VerificationReport:
    start = time.perf_counter()
    alg = TreeAlgebra(k)
    report = VerificationReport("cqg-axioms", {"k": k, "d": d, "g": g, "seed": seed, "samples": samples})
    check_coassociativity(report, alg, d, g, seed, samples, policy)
    check_unitarity(report, alg, d, policy)
    check_counit_antipode(report, alg, d, policy)
    return _finish(report, start)


def verify_hopf_laws(k: int, d: int, seed: int = 0, samples: int = 50,
                     policy: SearchPolicy | None = None) -> VerificationReport:
    """Counit and antipode laws on generators, plus eps o kappa = eps and kappa^2 = id."""
    start = time.perf_counter()
    alg = TreeAlgebra(k)
    report = VerificationReport("hopf-laws", {"k": k, "d": d, "seed": seed, "samples": samples})
    check_counit_antipode(report, alg, d, policy)
    for i, x in enumerate(random_monomials(alg, seed, d, 3, samples)):
        report.exact(f"eps(kappa(x)) = eps(x) random#{i:03d} {x}", counit(antipode(x)), counit(x))
        certify(report, f"kappa^2 = id random#{i:03d}", antipode(antipode(x)), x, policy)
    return _finish(report, start)


def verify_coaction(n: int, k: int, policy: SearchPolicy | None = None, m_values=None) -> VerificationReport:
    """Coaction identity, Podles span identity and i_{m,n}-compatibility for gamma_n."""
    start = time.perf_counter()
    alg = TreeAlgebra(k)
    F = FunctionLeg(n, k)
    report = VerificationReport("coaction", {"k": k, "n": n})
    ws = enumerate_words(k, n)
    for w in ws:
        gp = gamma(n, F.p(w), alg)
        lhs = delta_on_leg(gp, 0)
        rhs = apply_on_leg(gp, 1, lambda z: gamma(n, F.p(z), alg), (alg, F))
        certify(report, f"coaction (Delta x id)gamma_{n}(p[{render_word(w)}])", lhs, rhs, policy)
    one_f = TensorElement.from_element(F.one())
    for v in ws:
        total = None
        for u in ws:
            a_uv = TensorElement.from_element(alg.gen(u, v)).tensor(one_f)
            term = multiply_pointwise(gamma(n, F.p(u), alg), a_uv)
            total = term if total is None else total + term
        rhs = TensorElement.from_element(alg.one()).tensor(TensorElement.from_element(F.p(v)))
        certify(report, f"podles sum_u gamma_{n}(p_u)(a[u,{render_word(v)}] x 1)", total, rhs, policy)
    for m in (m_values if m_values is not None else range(1, n)):
        Fm = FunctionLeg(m, k)
        for w in enumerate_words(k, m):
            lhs = gamma(n, include(m, n, Fm.p(w)), alg)
            rhs = apply_on_leg(gamma(m, Fm.p(w), alg), 1, lambda z: include(m, n, Fm.p(z)), (F,))
            certify(report, f"compat gamma_{n} i_{m},{n}(p[{render_word(w)}])", lhs, rhs, policy)
    return _finish(report, start)
