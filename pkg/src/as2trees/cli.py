"""Command-line workbench.

Every subcommand prints either text or one JSON document (``--format json``).
Exit status: 0 on success, 1 when a requested check fails, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from contextlib import redirect_stderr
from typing import Sequence

from .exact_arith import LinComb, parse_lincomb
from .free_as2 import gen_multilinear_basis, gen_word_monomials, normal_form, parse_expr, top_tag
from .iso_bridge import FuelExhausted, SolveFailure, decompose_generation, multilinear_rank_check, tree_to_basis
from .products import DegreeZeroOperand, coproduct, render_pair, star_lin
from .reports import Report
from .series import (
    build_F_char,
    check_beta_eqs,
    check_character_duality,
    check_funcas,
    check_koszul_gf,
    check_narayana_eq,
    check_sl2_corollary,
)
from .trees import default_alphabet, enumerate_trees, parse_tree
from .verify import SUITES, run_suite

SERIES_CHECKS = {
    "funcas": check_funcas,
    "narayana": check_narayana_eq,
    "koszul": check_koszul_gf,
    "beta": check_beta_eqs,
    "duality": check_character_duality,
    "sl2": check_sl2_corollary,
}


class UsageError(Exception):
    pass


# -- input helpers ---------------------------------------------------------


def _alphabet(args) -> list[str] | None:
    if getattr(args, "alphabet", None):
        labels = [s.strip() for s in args.alphabet.split(",") if s.strip()]
        if len(set(labels)) != len(labels) or not labels:
            raise UsageError(f"bad alphabet {args.alphabet!r}")
        return labels
    if getattr(args, "labels", None) is not None:
        if args.labels < 1:
            raise UsageError("--labels must be at least 1")
        return default_alphabet(args.labels)
    return None


def _payloads(values: Sequence[str | None], stdin: str | None, names: Sequence[str]) -> list[str]:
    """Fill missing flag values from stdin lines, in order."""
    if all(v is not None for v in values):
        return list(values)
    if callable(stdin):
        stdin = stdin()
    lines = [ln for ln in (stdin or "").splitlines() if ln.strip()]
    out = []
    for v, name in zip(values, names):
        if v is None:
            if not lines:
                raise UsageError(f"missing {name} (flag or stdin line)")
            v = lines.pop(0)
        out.append(v)
    return out


def _tree_lincomb(text: str, alphabet) -> LinComb:
    return parse_lincomb(text, lambda s: parse_tree(s, alphabet))


def _expr_lincomb(text: str, alphabet) -> LinComb:
    return parse_lincomb(text, lambda s: parse_expr(s, alphabet))


# -- output helpers --------------------------------------------------------


def _terms_json(x: LinComb, field: str, fmt=str) -> dict:
    return {"terms": [{"coeff": str(c), field: fmt(k)} for k, c in x.items()]}


def _emit_lincomb(args, x: LinComb, field: str, fmt=str) -> str:
    if args.format == "json":
        return json.dumps(_terms_json(x, field, fmt))
    return x.render(fmt)


def _emit_reports(args, reports: list[Report]) -> tuple[int, str]:
    ok = all(r.passed for r in reports)
    if args.format == "json":
        if len(reports) == 1:
            doc = reports[0].to_dict()
        else:
            doc = {
                "reports": [r.to_dict() for r in reports],
                "passed": sum(r.passed for r in reports),
                "total": len(reports),
                "pass": ok,
            }
        return (0 if ok else 1), json.dumps(doc)
    lines = [r.to_text() for r in reports]
    if len(reports) > 1:
        lines.append(f"summary: {sum(r.passed for r in reports)}/{len(reports)} passed")
    return (0 if ok else 1), "\n".join(lines)


# -- subcommands -----------------------------------------------------------


def cmd_count_trees(args, stdin):
    alphabet = _alphabet(args) or default_alphabet(1)
    n = len(enumerate_trees(args.degree, alphabet))
    if args.format == "json":
        return 0, json.dumps({"degree": args.degree, "labels": len(alphabet), "count": n})
    return 0, str(n)


def cmd_enum_trees(args, stdin):
    alphabet = _alphabet(args) or default_alphabet(1)
    trees = [str(t) for t in enumerate_trees(args.degree, alphabet)]
    if args.format == "json":
        return 0, json.dumps({"degree": args.degree, "count": len(trees), "trees": trees})
    return 0, "\n".join(trees)


def cmd_mul(args, stdin):
    alphabet = _alphabet(args)
    lhs, rhs = _payloads([args.lhs, args.rhs], stdin, ["--lhs", "--rhs"])
    x, y = _tree_lincomb(lhs, alphabet), _tree_lincomb(rhs, alphabet)
    return 0, _emit_lincomb(args, star_lin(args.op, x, y, unital=args.unital), "tree")


def cmd_coproduct(args, stdin):
    (text,) = _payloads([args.tree], stdin, ["--tree"])
    x = _tree_lincomb(text, _alphabet(args))
    out = LinComb()
    for t, c in x.items():
        out = out + coproduct(t) * c
    if args.format == "json":
        terms = [{"coeff": str(c), "left": str(s), "right": str(t)} for (s, t), c in out.items()]
        return 0, json.dumps({"terms": terms})
    return 0, out.render(render_pair)


def cmd_nf(args, stdin):
    (text,) = _payloads([args.expr], stdin, ["--expr"])
    return 0, _emit_lincomb(args, normal_form(_expr_lincomb(text, _alphabet(args))), "expr")


def cmd_basis(args, stdin):
    alphabet = _alphabet(args)
    if args.multilinear:
        if alphabet is None:
            raise UsageError("--multilinear needs --alphabet or --labels")
        monos = gen_multilinear_basis(alphabet)
    else:
        if args.degree is None:
            raise UsageError("--words needs --degree")
        monos = gen_word_monomials(args.degree, alphabet or default_alphabet(1))
    if args.format == "json":
        items = [{"expr": str(m), "tag": top_tag(m)} for m in monos]
        return 0, json.dumps({"count": len(monos), "monomials": items})
    return 0, "\n".join(f"{top_tag(m)} {m}" for m in monos)


def cmd_to_basis(args, stdin):
    alphabet = _alphabet(args)
    (text,) = _payloads([args.tree], stdin, ["--tree"])
    try:
        coords = tree_to_basis(_tree_lincomb(text, alphabet), alphabet)
    except SolveFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1, ""
    return 0, _emit_lincomb(args, coords, "expr")


def cmd_decompose(args, stdin):
    (text,) = _payloads([args.tree], stdin, ["--tree"])
    t = parse_tree(text, _alphabet(args))
    try:
        x = decompose_generation(t, args.fuel)
    except FuelExhausted as exc:
        if args.format == "json":
            return 1, json.dumps({"tree": str(t), "fuel_exhausted": str(exc)})
        return 1, f"fuel exhausted: {exc}"
    return 0, _emit_lincomb(args, x, "expr")


def cmd_rank(args, stdin):
    return _emit_reports(args, [multilinear_rank_check(args.n, allow_large=args.allow_large)])


def cmd_series(args, stdin):
    report = SERIES_CHECKS[args.check](args.order)
    code, text = _emit_reports(args, [report])
    if args.show and args.format == "text":
        text = build_F_char(args.order).render("p1") + "\n" + text
    return code, text


def cmd_verify(args, stdin):
    names = SUITES if args.suite == "all" else (args.suite,)
    reports = [r for s in names for r in run_suite(s, args.max_degree, args.order)]
    return _emit_reports(args, reports)


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    alpha = common.add_mutually_exclusive_group()
    alpha.add_argument("--labels", type=int, help="use labels x1..xk")
    alpha.add_argument("--alphabet", help="comma separated labels, e.g. a,b,c")

    p = argparse.ArgumentParser(prog="as2trees", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("count-trees", parents=[common], help="number of trees of a degree")
    s.add_argument("--degree", type=int, required=True)
    s.set_defaults(run=cmd_count_trees)

    s = sub.add_parser("enum-trees", parents=[common], help="list trees of a degree")
    s.add_argument("--degree", type=int, required=True)
    s.set_defaults(run=cmd_enum_trees)

    s = sub.add_parser("mul", parents=[common], help="star product of two tree combinations")
    s.add_argument("--op", type=int, choices=(1, 2), required=True)
    s.add_argument("--lhs")
    s.add_argument("--rhs")
    s.add_argument("--unital", action="store_true", help="treat () as a two-sided unit")
    s.set_defaults(run=cmd_mul)

    s = sub.add_parser("coproduct", parents=[common], help="coproduct of a tree combination")
    s.add_argument("--tree")
    s.set_defaults(run=cmd_coproduct)

    s = sub.add_parser("nf", parents=[common], help="normal form of an expression combination")
    s.add_argument("--expr")
    s.set_defaults(run=cmd_nf)

    s = sub.add_parser("basis", parents=[common], help="monomial basis")
    kind = s.add_mutually_exclusive_group(required=True)
    kind.add_argument("--multilinear", action="store_true")
    kind.add_argument("--words", action="store_true")
    s.add_argument("--degree", type=int)
    s.set_defaults(run=cmd_basis)

    s = sub.add_parser("to-basis", parents=[common], help="coordinates of a tree combination")
    s.add_argument("--tree")
    s.set_defaults(run=cmd_to_basis)

    s = sub.add_parser("decompose", parents=[common], help="write a tree through degree-1 generators")
    s.add_argument("--tree")
    s.add_argument("--fuel", type=int, default=1000)
    s.set_defaults(run=cmd_decompose)

    s = sub.add_parser("rank", parents=[common], help="multilinear rank check")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--allow-large", action="store_true", help="permit n = 5")
    s.set_defaults(run=cmd_rank)

    s = sub.add_parser("series", parents=[common], help="generating-series identity check")
    s.add_argument("--check", choices=sorted(SERIES_CHECKS), required=True)
    s.add_argument("--order", type=int, default=8)
    s.add_argument("--show", action="store_true", help="also print the character series")
    s.set_defaults(run=cmd_series)

    s = sub.add_parser("verify", parents=[common], help="run verification suites")
    s.add_argument("--suite", choices=SUITES + ("all",), default="all")
    s.add_argument("--max-degree", type=int, default=4)
    s.add_argument("--order", type=int, default=8)
    s.set_defaults(run=cmd_verify)
    return p


def run(argv: Sequence[str], stdin=None) -> tuple[int, str]:
    """Execute one invocation; returns ``(exit code, stdout text)``.

    ``stdin`` is the text of standard input, or a callable producing it.
    """
    parser = build_parser()
    err = io.StringIO()
    try:
        with redirect_stderr(err):
            args = parser.parse_args(list(argv))
    except SystemExit as exc:
        sys.stderr.write(err.getvalue())
        return int(exc.code or 0), ""
    try:
        return args.run(args, stdin)
    except (UsageError, ValueError, KeyError, DegreeZeroOperand) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2, ""


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    def stdin():
        # read only when a payload flag is missing
        return "" if sys.stdin is None or sys.stdin.isatty() else sys.stdin.read()

    code, out = run(argv, stdin)
    if out:
        print(out)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
