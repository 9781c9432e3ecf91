"""Finite-dimensional matrix representations of A_X.

Every representation here is built from a "base block" of generator images
at some depth m, extended to all depths by the rule b_{uw,vw'} =
delta_{w,w'} b_{u,v} (|u| = |v| = m) and downwards by the row sums
b_{u,v} = sum_y b_{u0,vy}.  The two-projection family puts p and q into the
depth-2 block, which makes the image noncommutative.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .classical import Portrait, _nodes, compose, identity_perm, indicator_eval
from .engine import Element, Gen, substitute
from .tensor import TensorElement
from .words import enumerate_words

DEFAULT_TOL = 1e-10


class MatrixRep:
    """Generator assignment a[u,v] -> matrix, computed lazily and cached."""

    def __init__(self, k: int, dim: int, image: Callable[[Gen], np.ndarray], max_depth: int | None,
                 provenance: str, tol: float = DEFAULT_TOL):
        self.k = k
        self.dim = dim
        self._image = image
        self.max_depth = max_depth
        self.provenance = provenance
        self.tol = tol
        self._cache: dict = {}
        self.identity = np.eye(dim)

    def __repr__(self):
        return f"MatrixRep({self.provenance}, k={self.k}, dim={self.dim})"

    def gen(self, g: Gen) -> np.ndarray:
        hit = self._cache.get(g)
        if hit is not None:
            return hit
        if not g.row:
            return self.identity
        if self.max_depth is not None and len(g.row) > self.max_depth:
            raise ValueError(f"generator {g} beyond the representation depth cap {self.max_depth}")
        mat = self._image(g)
        self._cache[g] = mat
        return mat

    def monomial(self, m: tuple) -> np.ndarray:
        out = self.identity
        for g in m:
            out = out @ self.gen(g)
        return out


def block_rep(k: int, base_depth: int, base: Callable[[Gen], np.ndarray], dim: int, max_depth: int | None,
              provenance: str, tol: float = DEFAULT_TOL) -> MatrixRep:
    """Extend a magic block at depth base_depth to every depth."""
    rep: MatrixRep

    def image(g: Gen):
        u, v = g
        n = len(u)
        if n == base_depth:
            return base(g)
        if n > base_depth:
            if u[base_depth:] != v[base_depth:]:
                return np.zeros((dim, dim))
            return rep.gen(Gen(u[:base_depth], v[:base_depth]))
        return sum(rep.gen(Gen(u + (0,), v + (y,))) for y in range(k))

    rep = MatrixRep(k, dim, image, max_depth, provenance, tol)
    return rep


def projection(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c * c, c * s], [c * s, s * s]])


def _two_block(P: np.ndarray, k: int) -> np.ndarray:
    """k x k magic block [[P, 1-P], [1-P, P]] padded by identity entries."""
    dim = P.shape[0]
    one = np.eye(dim)
    blk = np.zeros((k, k, dim, dim))
    blk[0, 0] = P
    blk[0, 1] = one - P
    blk[1, 0] = one - P
    blk[1, 1] = P
    for i in range(2, k):
        blk[i, i] = one
    return blk


def two_projection_rep(theta: float = math.pi / 4, D: int | None = 3, k: int = 2, allow_degenerate: bool = False,
                       tol: float = DEFAULT_TOL) -> MatrixRep:
    """b_{00,00} = p = diag(1,0), b_{10,10} = q = projection onto (cos, sin)."""
    if not allow_degenerate and not 0 < theta < math.pi / 2:
        raise ValueError("theta must lie strictly between 0 and pi/2 (endpoints commute)")
    p = np.diag([1.0, 0.0])
    q = projection(theta)
    blocks = {0: _two_block(p, k), 1: _two_block(q, k)}
    ident = _two_block(np.eye(2), k)

    def base(g: Gen):
        (x, u), (y, v) = g
        if x != y:
            return np.zeros((2, 2))
        return blocks.get(x, ident)[u, v]

    return block_rep(k, 2, base, 2, D, f"two-projection(theta={theta:.6g})", tol)


def classical_rep(portraits: Sequence[Portrait], D: int | None = None, check_group: bool = True,
                  extend: bool = False, tol: float = DEFAULT_TOL) -> MatrixRep:
    """Diagonal representation: a[u,v] -> diag_g [g.v = u].

    With extend=True the portraits are read as automorphisms of the whole
    tree with identity labels below their depth, so deeper generators are
    allowed.
    """
    portraits = list(portraits)
    if not portraits:
        raise ValueError("empty portrait list")
    if check_group:
        seen = set(portraits)
        for g in portraits:
            for h in portraits:
                if compose(g, h) not in seen:
                    raise ValueError("portraits do not form a group")
    depth = portraits[0].depth
    if not extend:
        D = depth if D is None else min(D, depth)

    def value(g: Gen, h: Portrait) -> float:
        u, v = g
        if len(v) <= depth:
            return float(indicator_eval(g, h))
        return float(h.table[v[:depth]] + v[depth:] == u)

    def image(g: Gen):
        return np.diag([value(g, h) for h in portraits])

    return MatrixRep(portraits[0].k, len(portraits), image, D, f"classical(order={len(portraits)}, depth={depth})", tol)


def random_magic_block(k: int, dim: int, rng: np.random.Generator) -> np.ndarray:
    """k x k magic block on C^dim: a random projection on a random letter pair."""
    v = rng.normal(size=(dim, max(1, dim // 2)))
    qmat, _ = np.linalg.qr(v)
    P = qmat @ qmat.T
    blk = _two_block(P, k)
    perm = rng.permutation(k)
    return blk[np.ix_(perm, perm)]


def random_tree_rep(k: int, D: int, dim: int = 2, seed: int = 0, tol: float = DEFAULT_TOL) -> MatrixRep:
    """Random magic blocks at depth D, one under every vertex of length D-1.

    a[sx, ty] -> delta_{s,t} B_s[x,y]; shallower generators come out as
    delta_{u,v}, deeper ones by the delta-extension.  The two-projection
    representation is the case D=2 with two specific blocks.
    """
    rng = np.random.default_rng(seed)
    blocks = {s: random_magic_block(k, dim, rng) for s in enumerate_words(k, D - 1)}

    def base(g: Gen):
        u, v = g
        if u[:-1] != v[:-1]:
            return np.zeros((dim, dim))
        return blocks[u[:-1]][u[-1], v[-1]]

    return block_rep(k, D, base, dim, None, f"random-tree(k={k}, D={D}, dim={dim}, seed={seed})", tol)


def convolve(r1: MatrixRep, r2: MatrixRep) -> MatrixRep:
    """(r1 x r2) o Delta: a[u,v] -> sum_w r1(a[u,w]) kron r2(a[w,v])."""
    if r1.k != r2.k:
        raise ValueError("alphabet mismatch")
    k = r1.k

    def image(g: Gen):
        u, v = g
        return sum(np.kron(r1.gen(Gen(u, w)), r2.gen(Gen(w, v))) for w in enumerate_words(k, len(u)))

    caps = [d for d in (r1.max_depth, r2.max_depth) if d is not None]
    return MatrixRep(k, r1.dim * r2.dim, image, min(caps) if caps else None,
                     f"convolution({r1.provenance}; {r2.provenance})", min(r1.tol, r2.tol))


def root_permutation_group(k: int, depth: int) -> list:
    """Sym(X) acting at the root only, as depth-`depth` portraits."""
    nodes = _nodes(k, depth)
    ident = identity_perm(k)
    out = []
    for s in itertools.permutations(range(k)):
        out.append(Portrait(k, depth, (s,) + (ident,) * (len(nodes) - 1)))
    return out


# -- evaluation


def _leg_matrix(leg, item, rep: MatrixRep) -> np.ndarray:
    kind = getattr(leg, "kind", None)
    if kind == "function":
        size = leg.k**leg.n
        idx = 0
        for c in item:
            idx = idx * leg.k + c
        out = np.zeros((size, size))
        out[idx, idx] = 1.0
        return out
    if kind == "wreath":
        return numeric_eval(leg.phi_monomial(item), rep)
    return rep.monomial(item)


def numeric_eval(x, rep: MatrixRep) -> np.ndarray:
    """Evaluate an Element, wreath element or TensorElement (legs via Kronecker)."""
    if isinstance(x, Element):
        kind = getattr(x.alg, "kind", None)
        if kind == "function":
            return numeric_eval(TensorElement.from_element(x), rep)
        if kind == "wreath":
            return sum((c * numeric_eval(x.alg.phi_monomial(m), rep) for m, c in x.terms.items()),
                       np.zeros((rep.dim, rep.dim)))
        return substitute(x, rep.gen, rep.identity, mul=lambda s, t: s @ t,
                          scale=lambda c, t: float(c) * t)
    if isinstance(x, TensorElement):
        total = None
        for key, c in x.terms.items():
            mat = None
            for leg, item in zip(x.legs, key):
                m = _leg_matrix(leg, item, rep)
                mat = m if mat is None else np.kron(mat, m)
            term = float(c) * mat
            total = term if total is None else total + term
        if total is None:
            dim = 1
            for leg in x.legs:
                dim *= leg.k**leg.n if getattr(leg, "kind", None) == "function" else rep.dim
            total = np.zeros((dim, dim))
        return total
    raise TypeError(f"cannot evaluate {type(x).__name__}")


def op_norm(m: np.ndarray) -> float:
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


@dataclass
class NumericReport:
    provenance: str
    depth: int
    tol: float
    residuals: dict = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol

    def to_dict(self) -> dict:
        return {
            "provenance": self.provenance,
            "depth": self.depth,
            "tol": self.tol,
            "residuals": {k: float(f"{v:.3e}") for k, v in sorted(self.residuals.items())},
            "max_residual": float(f"{self.max_residual:.3e}"),
            "pass": self.passed,
        }


def relation_report(rep: MatrixRep, depth: int) -> NumericReport:
    """Residuals of the defining relations for all generators of depth <= depth."""
    k = rep.k
    res = {"unit": 0.0, "self-adjoint": 0.0, "idempotent": 0.0, "row-sum": 0.0, "col-sum": 0.0}
    res["unit"] = op_norm(rep.gen(Gen((), ())) - rep.identity)
    for n in range(0, depth + 1):
        ws = enumerate_words(k, n)
        for u in ws:
            for v in ws:
                b = rep.gen(Gen(u, v))
                if n:
                    res["self-adjoint"] = max(res["self-adjoint"], op_norm(b - b.conj().T))
                    res["idempotent"] = max(res["idempotent"], op_norm(b @ b - b))
                if n < depth:
                    for x in range(k):
                        r = sum(rep.gen(Gen(u + (x,), v + (y,))) for y in range(k)) - b
                        c = sum(rep.gen(Gen(u + (z,), v + (x,))) for z in range(k)) - b
                        res["row-sum"] = max(res["row-sum"], op_norm(r))
                        res["col-sum"] = max(res["col-sum"], op_norm(c))
    return NumericReport(rep.provenance, depth, rep.tol, res)


def refute(lhs, rhs, reps: Sequence[MatrixRep], tol: float = DEFAULT_TOL):
    """'refuted' if some representation separates lhs and rhs, else 'inconclusive'."""
    diff = lhs - rhs
    for rep in reps:
        if op_norm(numeric_eval(diff, rep)) > 100 * tol:
            return "refuted"
    return "inconclusive"


def default_reps(k: int, depth: int, seed: int = 0) -> list[MatrixRep]:
    """The configured representations used for soundness cross-checks."""
    reps = []
    if k == 2:
        for theta in (0.3, 0.7, 1.1, math.pi / 4):
            reps.append(two_projection_rep(theta, None, 2))
    else:
        reps.append(two_projection_rep(math.pi / 4, None, k))
        reps.append(two_projection_rep(0.7, None, k))
    r2 = random_tree_rep(k, 2, 2, seed)
    r3 = random_tree_rep(k, 3, 2, seed + 1)
    root = classical_rep(root_permutation_group(k, 1), extend=True)
    reps.extend([r2, r3, convolve(root, r2), convolve(r2, r3)])
    return reps
