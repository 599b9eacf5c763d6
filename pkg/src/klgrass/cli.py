"""Command-line front end.

Exit status: 0 success / all checks pass, 1 verification failure, 2 usage or
validation error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import combinatorics as comb
from .combinatorics import GrassmannShape, YoungDiagram
from .dual import dual_parabolic_kl, factorized_dual, format_q, iso_to_poly, q_polynomial
from .hecke import grassmannian_perm, yang_baxter, yb_scalars
from .parabolic import apply_x_lambda, kl_by_signs
from .verify import CHECKS, FAULTS, run_checks

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _shape(args) -> GrassmannShape:
    try:
        return GrassmannShape(args.n, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _diagram(args, shape) -> YoungDiagram:
    if args.lam is None:
        raise UsageError("--lambda is required (use --lambda '' for the empty diagram)")
    try:
        return comb.parse_partition(args.lam, shape)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _diagrams(args, shape) -> list[YoungDiagram]:
    if getattr(args, "all", False):
        return comb.all_diagrams(shape)
    return [_diagram(args, shape)]


def _emit(args, text_lines: list[str], payload) -> int:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(text_lines))
    return EXIT_OK


def cmd_word(args) -> int:
    shape = _shape(args)
    lam = _diagram(args, shape)
    word = comb.reduced_word(lam)
    eps = comb.to_sign_sequence(lam)
    lines = [
        f"lambda: {lam}",
        f"word: {' '.join(map(str, word))}".rstrip(),
        f"size: {lam.size}",
        f"sequence: {eps}",
    ]
    payload = {"n": shape.n, "k": shape.k, "lambda": list(lam.rows), "word": word,
               "size": lam.size, "sequence": eps}
    return _emit(args, lines, payload)


def cmd_shifts(args) -> int:
    shape = _shape(args)
    lam = _diagram(args, shape)
    table = comb.shifts(lam)
    rows = [[table[i, j] for j in range(1, lam.row(i) + 1)] for i in range(1, len(lam.rows) + 1)]
    lines = [f"lambda: {lam}", "shifts:"] + ["  " + " ".join(map(str, r)) for r in rows]
    payload = {"n": shape.n, "k": shape.k, "lambda": list(lam.rows), "shifts": rows}
    if lam.rows:
        st = comb.stairs(lam)
        peel = comb.peel_rectangle(lam)
        b = peel.block
        lines.append("stairs: " + " ".join(f"({a},{h})" for a, h in st))
        lines.append(f"peel: rows {b.top}-{b.top + b.rows - 1} cols {b.left}-{b.left + b.cols - 1}")
        lines.append(f"rest: {peel.rest}")
        lines.append("I = {" + ",".join(map(str, peel.I)) + "}")
        lines.append("J = {" + ",".join(map(str, peel.J)) + "}")
        payload.update(
            stairs=[list(s) for s in st],
            peel={"top": b.top, "left": b.left, "rows": b.rows, "cols": b.cols,
                  "rest": list(peel.rest.rows), "I": list(peel.I), "J": list(peel.J)},
        )
    return _emit(args, lines, payload)


def cmd_basis(args) -> int:
    shape = _shape(args)
    lines, payload, status = [], [], EXIT_OK
    for lam in _diagrams(args, shape):
        fact = apply_x_lambda(lam)
        oracle = kl_by_signs(comb.to_sign_sequence(lam))
        agree = fact == oracle
        status = status if agree else EXIT_FAIL
        lines += [
            f"lambda: {lam}",
            f"  factorized: {fact}",
            f"  oracle:     {oracle}",
            f"  agree: {'yes' if agree else 'NO'}",
        ]
        payload.append({"lambda": list(lam.rows), "sequence": comb.to_sign_sequence(lam),
                        "factorized": fact.to_json(), "oracle": oracle.to_json(),
                        "agree": agree})
    _emit(args, lines, {"n": shape.n, "k": shape.k, "elements": payload})
    return status


def cmd_dual(args) -> int:
    shape = _shape(args)
    lines, payload, status = [], [], EXIT_OK
    style = "tex" if args.tex else "plain"
    for lam in _diagrams(args, shape):
        eps = comb.to_sign_sequence(lam)
        y = grassmannian_perm(lam)
        q = q_polynomial(eps)
        agree = q == iso_to_poly(dual_parabolic_kl(y, shape.k)) == iso_to_poly(
            factorized_dual(y, shape.k))
        status = status if agree else EXIT_FAIL
        if len(lines):
            lines.append("")
        lines += [format_q(eps, style), f"expanded: {q}",
                  f"oracle: {'agrees' if agree else 'DISAGREES'}"]
        payload.append({"lambda": list(lam.rows), "sequence": eps,
                        "factored": format_q(eps, style), "polynomial": q.to_json(),
                        "agree": agree})
    _emit(args, lines, {"n": shape.n, "k": shape.k, "polynomials": payload})
    return status


def cmd_yb(args) -> int:
    n = args.n
    try:
        word = [int(t) for t in args.word.split(",") if t.strip()]
        rs = yb_scalars(word, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    elem = yang_baxter(word, n)
    lines = [
        f"word: {' '.join(map(str, word))}".rstrip(),
        f"scalars: {' '.join(map(str, rs))}",
        f"element: {elem}",
    ]
    return _emit(args, lines, {"n": n, "word": word, "scalars": rs, "element": elem.to_json()})


def cmd_verify(args) -> int:
    checks = CHECKS if args.checks in (None, "all") else [c.strip() for c in args.checks.split(",")]
    try:
        report = run_checks(args.max_n, checks, force=args.force, jobs=args.jobs, fault=args.fault)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        print(json.dumps(report.to_json(timings=args.timings), indent=2, sort_keys=True))
    else:
        for check, (ok, total) in report.summary().items():
            print(f"{check:12s} {ok}/{total} {'PASS' if ok == total else 'FAIL'}")
        for it in report.items:
            if it.passed and not args.verbose:
                continue
            where = f"n={it.n}" + (f" k={it.k}" if it.k is not None else "")
            line = f"  {'ok ' if it.passed else 'FAIL'} {it.check} {where} {it.subject}"
            if args.timings:
                line += f" [{it.ms:.1f} ms]"
            print(line)
            if it.counterexample:
                print("       " + json.dumps(it.counterexample, sort_keys=True))
        print("all checks passed" if report.passed else "verification FAILED")
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="klgrass", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, diagram=True, allow_all=False):
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--k", type=int, required=True)
        if diagram:
            sp.add_argument("--lambda", dest="lam", default=None,
                            help="comma-separated parts; empty string for the empty diagram")
        if allow_all:
            sp.add_argument("--all", action="store_true", help="every diagram in the box")
        sp.add_argument("--format", choices=("text", "json"), default="text")

    common(sub.add_parser("word", help="reduced word and sign sequence of w_lambda"))
    common(sub.add_parser("shifts", help="shift table, stairs and rectangle peel"))
    common(sub.add_parser("basis", help="factorized vs. triangular KL element in M"), allow_all=True)
    sp = sub.add_parser("dual", help="factored polynomial Q for w_lambda(1) in the dual module")
    common(sp, allow_all=True)
    sp.add_argument("--tex", action="store_true", help="LaTeX-style rendering")

    sp = sub.add_parser("yb", help="Yang-Baxter element of a reduced word")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--word", required=True, help="generators in product order, e.g. 1,2,1")
    sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("verify", help="batch verification")
    sp.add_argument("--max-n", type=int, default=6)
    sp.add_argument("--checks", default="all", help=f"comma list from {','.join(CHECKS)}")
    sp.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    sp.add_argument("--force", action="store_true", help="lift the desk-scale size limits")
    sp.add_argument("--fault", choices=FAULTS, default=None, help="inject a fault (negative control)")
    sp.add_argument("--timings", action="store_true", help="include per-item timings")
    sp.add_argument("--verbose", "-v", action="store_true")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    return p


COMMANDS = {
    "word": cmd_word,
    "shifts": cmd_shifts,
    "basis": cmd_basis,
    "dual": cmd_dual,
    "yb": cmd_yb,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
