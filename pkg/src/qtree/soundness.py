"""Cross-checks of certified identities against independent oracles.

Every ProvedZero difference is evaluated (a) numerically in the configured
matrix representations and (b) exactly under the abelianization oracle at
classical points.  Quotient legs use points of G_P; the free algebra uses
all of Aut(X^[D]); wreath legs are read through phi.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .classical import Portrait, _nodes, aut_order, enumerate_aut, enumerate_GP, gp_order, preset_subgroup, tensor_eval
from .engine import Certificate, Element
from .reps import _leg_matrix, classical_rep, default_reps, op_norm
from .tensor import TensorElement
from .words import enumerate_words

DEFAULT_TOL = 1e-9
KRON_LIMIT = 256
ENUMERATE_LIMIT = 4096


@dataclass
class SoundnessResult:
    checked: int = 0
    skipped: int = 0
    numeric_max: float = 0.0
    numeric_failures: list = field(default_factory=list)
    abelian_failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.numeric_failures and not self.abelian_failures

    def summary(self) -> str:
        return (f"soundness: {'PASS' if self.ok else 'FAIL'} ({self.checked} differences, "
                f"max numeric residual {self.numeric_max:.2e}, {len(self.numeric_failures)} numeric and "
                f"{len(self.abelian_failures)} abelian failures)")


def _as_tensor(x) -> TensorElement:
    return x if isinstance(x, TensorElement) else TensorElement.from_element(x)


def _subgroup(leg):
    """The classical group whose points evaluate this leg, or None for Aut."""
    base = getattr(leg, "base", leg)
    I = getattr(base, "relator_set", None)
    if I is None:
        return None
    if I.classical is None:
        raise ValueError(f"no classical points known for {base.name}")
    return I.classical


# -- numerical representations


@lru_cache(maxsize=32)
def _free_reps(k: int, seed: int):
    return tuple(default_reps(k, 3, seed))


@lru_cache(maxsize=32)
def _quotient_reps(P) -> tuple:
    depth = 2 if gp_order(P, 2) <= 256 else 1
    return (classical_rep(enumerate_GP(P, depth), extend=True, check_group=False),)


def _reps_for(t: TensorElement, seed: int):
    groups = {_subgroup(leg) for leg in t.legs if getattr(leg, "kind", None) != "function"}
    groups.discard(None)
    k = t.legs[0].k
    if groups:
        if len(groups) > 1:
            raise ValueError("legs over different quotients")
        return _quotient_reps(groups.pop())
    return _free_reps(k, seed)


def _leg_dim(leg, rep) -> int:
    return leg.k**leg.n if getattr(leg, "kind", None) == "function" else rep.dim


def numeric_residual(x, rep, rng: np.random.Generator) -> float:
    """Operator norm of x in rep, or a product-vector probe estimate for big tensors."""
    t = _as_tensor(x)
    dims = [_leg_dim(leg, rep) for leg in t.legs]
    if int(np.prod(dims)) <= KRON_LIMIT:
        total = None
        for key, c in t.terms.items():
            mat = None
            for leg, item in zip(t.legs, key):
                m = _leg_matrix(leg, item, rep)
                mat = m if mat is None else np.kron(mat, m)
            term = float(c) * mat
            total = term if total is None else total + term
        return 0.0 if total is None else op_norm(total)
    worst = 0.0
    for _ in range(3):
        xs = [rng.normal(size=n) for n in dims]
        ys = [rng.normal(size=n) for n in dims]
        xs = [v / np.linalg.norm(v) for v in xs]
        ys = [v / np.linalg.norm(v) for v in ys]
        value = 0.0
        for key, c in t.terms.items():
            prod = float(c)
            for leg, item, xv, yv in zip(t.legs, key, xs, ys):
                prod *= float(yv @ (_leg_matrix(leg, item, rep) @ xv))
            value += prod
        worst = max(worst, abs(value))
    return worst


# -- classical points


def random_portrait(k: int, depth: int, perms, rng: random.Random) -> Portrait:
    return Portrait(k, depth, tuple(rng.choice(perms) for _ in _nodes(k, depth)))


@lru_cache(maxsize=64)
def _all_points(k: int, depth: int, P):
    if P is None:
        return tuple(enumerate_aut(k, depth)) if aut_order(k, depth) <= ENUMERATE_LIMIT else None
    return tuple(enumerate_GP(P, depth)) if gp_order(P, depth) <= ENUMERATE_LIMIT else None


def _leg_points(leg, depth: int, rng: random.Random, count: int):
    if getattr(leg, "kind", None) == "function":
        return list(enumerate_words(leg.k, leg.n))
    P = _subgroup(leg)
    pts = _all_points(leg.k, depth, P)
    if pts is not None:
        return list(pts)
    perms = list(P.elements) if P is not None else list(preset_subgroup("full", leg.k).elements)
    return [random_portrait(leg.k, depth, perms, rng) for _ in range(count)]


def abelian_failures(x, rng: random.Random, point_cap: int = 256) -> int:
    """Number of classical points where x evaluates to a nonzero value."""
    t = _as_tensor(x)
    depth = 1
    for key in t.terms:
        for leg, item in zip(t.legs, key):
            if getattr(leg, "kind", None) != "function":
                depth = max(depth, leg.depth_of(item))
    per_leg = [_leg_points(leg, depth, rng, point_cap) for leg in t.legs]
    size = 1
    for pts in per_leg:
        size *= len(pts)
    if size <= point_cap:
        tuples = itertools.product(*per_leg)
    else:
        tuples = (tuple(rng.choice(pts) for pts in per_leg) for _ in range(point_cap))
    return sum(1 for pts in tuples if tensor_eval(t, pts) != 0)


# -- drivers


def check_difference(diff, tol: float = DEFAULT_TOL, seed: int = 0, point_cap: int = 256):
    """(max numeric residual, number of abelian failures) for one certified difference."""
    t = _as_tensor(diff)
    nrng = np.random.default_rng(seed)
    worst = 0.0
    for rep in _reps_for(t, seed):
        worst = max(worst, numeric_residual(t, rep, nrng))
    return worst, abelian_failures(t, random.Random(seed), point_cap)


def check_identities(results, tol: float = DEFAULT_TOL, seed: int = 0, point_cap: int = 256) -> SoundnessResult:
    out = SoundnessResult()
    for r in results:
        if r.certificate is not Certificate.PROVED_ZERO:
            continue
        if r.difference is None:
            out.skipped += 1
            continue
        worst, bad = check_difference(r.difference, tol, seed, point_cap)
        out.checked += 1
        out.numeric_max = max(out.numeric_max, worst)
        if worst >= tol:
            out.numeric_failures.append((r.name, worst))
        if bad:
            out.abelian_failures.append((r.name, bad))
    return out


def check_reports(reports, tol: float = DEFAULT_TOL, seed: int = 0, point_cap: int = 256) -> SoundnessResult:
    return check_identities((r for rep in reports for r in rep.identities), tol, seed, point_cap)


def check_element(x: Element | TensorElement, tol: float = DEFAULT_TOL, seed: int = 0) -> bool:
    worst, bad = check_difference(x, tol, seed)
    return worst < tol and bad == 0

