"""Command-line front end.

Exit codes: 0 pass, 1 failure or refutation, 2 usage error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor

from .classical import (
    aut_order,
    enumerate_aut,
    enumerate_GP,
    gp_order,
    preset_subgroup,
    verify_abelianization,
)
from .engine import Certificate, Element, TreeAlgebra, prove_zero
from .fincon import classical_crosscheck, quotient_algebra, split_preset
from .reps import classical_rep, random_tree_rep, relation_report, two_projection_rep
from .report import VerificationReport
from .selfsim import psi, rho_word, sigma
from .suites import SUITES, RunConfig, run_suite
from .syntax import ParseError, parse_any
from .tensor import FunctionLeg, TensorElement, prove_zero_tensor, tensor_product
from .words import parse_word

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
ENUMERATE_CAP = 5000


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser):
    p.add_argument("-k", type=int, default=None, help="alphabet size (default 2, or fixed by the preset)")
    p.add_argument("-d", "--depth", dest="d", type=int, default=2, help="generator depth")
    p.add_argument("-g", "--degree", dest="g", type=int, default=2, help="monomial degree for random samples")
    p.add_argument("-w", "--word-length", dest="word_length", type=int, default=2, help="bound on |w| for rho_w")
    p.add_argument("--preset", default=None, help="relator preset: full, trivial, cyclic, klein (k may be appended)")
    p.add_argument("--relators", default=None, metavar="FILE", help="relator file (JSON)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=None, help="number of random monomials")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--budget", type=int, default=None, help="reduction step budget")
    p.add_argument("--json", default=None, metavar="PATH", help="write JSON here ('-' for stdout)")
    p.add_argument("--timing", action="store_true", help="include timings in JSON (breaks byte-identity)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qtree", description="Symbolic verification for the quantum automorphism "
                                     "group of a homogeneous rooted tree.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="reduce an expression and certify whether it is zero")
    p.add_argument("expr")
    _common(p)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", help=f"one of: {', '.join(SUITES)}, or all")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for 'all' (report order is fixed)")
    _common(p)

    p = sub.add_parser("classical", help="classical portrait oracle")
    p.add_argument("action", choices=("enumerate", "count", "crosscheck"))
    _common(p)

    p = sub.add_parser("rep", help="numerical representations")
    p.add_argument("action", choices=("check",))
    p.add_argument("--family", choices=("two-projection", "random-tree", "classical"), default="two-projection")
    p.add_argument("--theta", type=float, default=math.pi / 4)
    p.add_argument("--dim", type=int, default=2, help="block dimension for random-tree")
    _common(p)

    for name, text in (("rho", "rho_w(expr)"), ("sigma", "sigma_x(expr)"), ("psi", "psi(p_x (x) expr)")):
        p = sub.add_parser(name, help=f"apply {text}")
        p.add_argument("word", help="the word w (rho) or letter x (sigma, psi)")
        p.add_argument("expr")
        _common(p)
    return parser


def _config(args) -> RunConfig:
    k = args.k
    if args.preset is not None:
        _, pk = split_preset(args.preset)
        if pk is not None:
            if k is not None and k != pk:
                raise UsageError(f"preset {args.preset!r} fixes k={pk}, but -k {k} was given")
            k = pk
    return RunConfig(k=k or 2, d=args.d, g=args.g, word_length=args.word_length, preset=args.preset,
                     relators=args.relators, seed=args.seed, samples=args.samples, tol=args.tol, budget=args.budget)


def _emit(args, payload, text: str | None = None):
    """Write JSON to --json PATH (or stdout for '-'); print text otherwise."""
    blob = json.dumps(payload, indent=2)
    if args.json == "-":
        print(blob)
    else:
        if args.json:
            with open(args.json, "w") as fh:
                fh.write(blob + "\n")
        if text is not None:
            print(text)


def _algebra(cfg: RunConfig):
    if cfg.preset is None and cfg.relators is None:
        return TreeAlgebra(cfg.k)
    return quotient_algebra(cfg.relator_set(), cfg.word_length)


def _exit_for(reports) -> int:
    if all(r.passed for r in reports):
        return EXIT_PASS
    if any(r.budget_exhausted for r in reports) and not any(
            i.certificate is Certificate.REFUTED for r in reports for i in r.identities):
        return EXIT_BUDGET
    return EXIT_FAIL


# -- commands


def cmd_reduce(args, cfg: RunConfig) -> int:
    alg = _algebra(cfg)
    x = parse_any(args.expr, alg)
    outcome = prove_zero_tensor(x, cfg.policy) if isinstance(x, TensorElement) else prove_zero(x, cfg.policy)
    result = "0" if outcome.proved_zero else outcome.result.render()
    _emit(args, {"input": args.expr, "k": cfg.k, "result": result, "certificate": str(outcome.certificate)},
          f"{result}\n{outcome.certificate}")
    if outcome.certificate is Certificate.BUDGET_EXHAUSTED:
        return EXIT_BUDGET
    return EXIT_PASS


def cmd_verify(args, cfg: RunConfig) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r} (choose from {', '.join(SUITES)}, all)")
    if args.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(run_suite, names, [cfg] * len(names)))
    else:
        reports = [run_suite(name, cfg) for name in names]
    payload = reports[0].to_dict(args.timing) if len(reports) == 1 else {
        "suites": [r.to_dict(args.timing) for r in reports], "pass": all(r.passed for r in reports)}
    _emit(args, payload, "\n".join(r.summary() for r in reports))
    return _exit_for(reports)


def cmd_classical(args, cfg: RunConfig) -> int:
    k, d = cfg.k, cfg.d
    name = split_preset(cfg.preset)[0] if cfg.preset else None
    if args.action == "count":
        if name is None:
            n = len(enumerate_aut(k, d)) if aut_order(k, d) <= 10**6 else aut_order(k, d)
            payload = {"k": k, "d": d, "group": "Aut", "count": n, "formula": aut_order(k, d)}
        else:
            P = preset_subgroup(name, k)
            n = len(enumerate_GP(P, d))
            payload = {"k": k, "d": d, "group": f"G_P[{name}]", "count": n, "formula": gp_order(P, d)}
        _emit(args, payload, str(payload["count"]))
        return EXIT_PASS if payload["count"] == payload["formula"] else EXIT_FAIL
    if args.action == "enumerate":
        P = preset_subgroup(name, k) if name else None
        total = gp_order(P, d) if P else aut_order(k, d)
        if total > ENUMERATE_CAP:
            raise UsageError(f"{total} portraits exceed the listing cap of {ENUMERATE_CAP}")
        group = enumerate_GP(P, d) if P else enumerate_aut(k, d)
        payload = {"k": k, "d": d, "count": len(group), "portraits": [g.to_json() for g in group]}
        _emit(args, payload, "\n".join(json.dumps(g.to_json()) for g in group))
        return EXIT_PASS
    if cfg.preset is None and cfg.relators is None:
        report = verify_abelianization(k, d)
    else:
        I = cfg.relator_set()
        report = VerificationReport("classical-crosscheck", {"k": I.k, "preset": I.name, "max_depth": d})
        classical_crosscheck(I, d, report)
    text = report.summary()
    if "rank" in report.notes:
        text += f"\nabelianization rank {report.notes['rank']} = group order {aut_order(k, d)}"
    _emit(args, report.to_dict(args.timing), text)
    return _exit_for([report])


def cmd_rep(args, cfg: RunConfig) -> int:
    if args.family == "two-projection":
        rep = two_projection_rep(args.theta, cfg.d, cfg.k, tol=cfg.tol)
    elif args.family == "random-tree":
        rep = random_tree_rep(cfg.k, max(cfg.d, 1), args.dim, cfg.seed, cfg.tol)
    else:
        name = split_preset(cfg.preset)[0] if cfg.preset else "full"
        rep = classical_rep(enumerate_GP(preset_subgroup(name, cfg.k), cfg.d), cfg.d, tol=cfg.tol)
    report = relation_report(rep, cfg.d)
    _emit(args, report.to_dict(), json.dumps(report.to_dict(), indent=2))
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_transform(args, cfg: RunConfig) -> int:
    alg = TreeAlgebra(cfg.k)
    x = parse_any(args.expr, alg)
    if not isinstance(x, Element) or x.alg != alg:
        raise UsageError("expected an element of the tree algebra")
    w = parse_word(args.word)
    if any(c >= cfg.k for c in w):
        raise UsageError(f"letter out of range for k={cfg.k}")
    if args.command == "rho":
        out = rho_word(w, x)
    else:
        if len(w) != 1:
            raise UsageError(f"{args.command} needs a single letter")
        if args.command == "sigma":
            out = sigma(w[0], x)
        else:
            out = psi(tensor_product(FunctionLeg(1, cfg.k).p(w), x))
    text = out.render()
    _emit(args, {"input": args.expr, "word": args.word, "map": args.command, "result": text}, text)
    return EXIT_PASS


COMMANDS = {"reduce": cmd_reduce, "verify": cmd_verify, "classical": cmd_classical, "rep": cmd_rep,
            "rho": cmd_transform, "sigma": cmd_transform, "psi": cmd_transform}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE



if __name__ == "__main__":
    sys.exit(main())
