"""Ground-truth suite for the defining relations and the standard identity families."""

from __future__ import annotations

import time

from .certify import certify
from .classical import abelian_eval, enumerate_aut
from .engine import SearchPolicy, TreeAlgebra
from .report import VerificationReport
from .selfsim import check_relations_preserved
from .syntax import parse_element
from .words import enumerate_words, render_word


def _tag(u, v) -> str:
    return f"[{render_word(u)},{render_word(v)}]"


def verify_relations(k: int, d: int, policy: SearchPolicy | None = None) -> VerificationReport:
    """Defining relations, same-row/column orthogonality, and products with depth-1 generators.

    For a[x,y] a[u,v] (and the reverse order) the certified value is a[u,v]
    when u_1 = x and v_1 = y and 0 when exactly one of them matches.  When
    both differ the product is not zero in general; those pairs are
    recorded in notes together with a classical point where the product is 1.
    """
    start = time.perf_counter()
    alg = TreeAlgebra(k)
    report = VerificationReport("relations", {"k": k, "d": d})
    certify(report, "a[e,e] = 1", parse_element("a[e,e]", alg), alg.one(), policy)
    check_relations_preserved(report, alg, lambda e: e, "id", d, policy)
    zero = alg.zero()
    for n in range(1, d + 1):
        ws = enumerate_words(k, n)
        for w in ws:
            for u in ws:
                for u2 in ws:
                    if u == u2:
                        continue
                    certify(report, f"column orthogonality a{_tag(u, w)} a{_tag(u2, w)}",
                            alg.gen(u, w) * alg.gen(u2, w), zero, policy)
                    certify(report, f"row orthogonality a{_tag(w, u)} a{_tag(w, u2)}",
                            alg.gen(w, u) * alg.gen(w, u2), zero, policy)
    group = enumerate_aut(k, max(d, 1))
    excluded = []
    for n in range(1, d + 1):
        ws = enumerate_words(k, n)
        for x in range(k):
            for y in range(k):
                axy = alg.gen((x,), (y,))
                for u in ws:
                    for v in ws:
                        auv = alg.gen(u, v)
                        hit_row, hit_col = u[0] == x, v[0] == y
                        if hit_row and hit_col:
                            rhs = auv
                        elif hit_row != hit_col:
                            rhs = zero
                        else:
                            witness = next((g for g in group if abelian_eval(axy * auv, g)), None)
                            excluded.append(f"a[{x},{y}]a{_tag(u, v)} nonzero at {witness.to_json() if witness else None}")
                            continue
                        tag = f"a[{x},{y}] a{_tag(u, v)}"
                        certify(report, f"left {tag}", axy * auv, rhs, policy)
                        certify(report, f"right {tag}", auv * axy, rhs, policy)
    report.notes["excluded"] = excluded
    report.duration = time.perf_counter() - start
    return report
