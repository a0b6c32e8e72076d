"""Command-line front end.

Exit codes: 0 success (or assertion true), 1 assertion false (``check``
only), 2 usage, parse or load error. Results go to stdout, diagnostics to
stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from lifter.context import load_context_file
from lifter.errors import LifterError
from lifter.evaluator import Evaluator, parse_invocation
from lifter.parser import load_assertion_file
from lifter.suggest import Limits, batch_evaluate, load_corpus, suggest, write_feature_matrix
from lifter.syntax import format_tree, pretty_print
from lifter.terms import load_goal

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


class _Failure(Exception):
    pass


def _fail(path, exc: Exception) -> _Failure:
    if isinstance(exc, LifterError):
        loc = exc.location() or "1:1"
        return _Failure(f"{path}:{loc}: {exc.message}")
    if isinstance(exc, OSError):
        return _Failure(f"{path}: {exc.strerror}")
    return _Failure(f"{path}: {exc}")


def _load(path, loader):
    try:
        return loader(path)
    except (LifterError, OSError) as exc:
        raise _fail(path, exc) from None


def _load_triple_inputs(args):
    ctx = _load(args.context, load_context_file)
    goal = _load(args.goal, lambda p: load_goal(Path(p).read_text(encoding="utf-8"), ctx.signature))
    return goal, ctx


def cmd_check(args) -> int:
    goal, ctx = _load_triple_inputs(args)
    assertion = _load(args.assertion, load_assertion_file)
    invocation = _load("--induct", lambda _: parse_invocation(args.induct, goal, ctx))
    ev = Evaluator(goal, ctx, invocation)
    if args.explain:
        result, trace = ev.explain(assertion)
        print("true" if result else "false")
        for line in trace:
            print(line)
    else:
        result = ev.holds(assertion)
        print("true" if result else "false")
    return EXIT_TRUE if result else EXIT_FALSE


def cmd_parse(args) -> int:
    assertion = _load(args.assertion, load_assertion_file)
    print(format_tree(assertion))
    print(pretty_print(assertion))
    return EXIT_TRUE


def _suite(directory):
    path = Path(directory)
    if not path.is_dir():
        raise _Failure(f"{directory}: not a directory")
    return [(p.stem, _load(p, load_assertion_file)) for p in sorted(path.glob("*.lifter"))]


def cmd_suggest(args) -> int:
    goal, ctx = _load_triple_inputs(args)
    suite = _suite(args.assertions_dir)
    try:
        limits = Limits(args.max_ind_terms, args.max_arbitrary)
    except ValueError as exc:
        raise _Failure(str(exc)) from None
    for cand in suggest(goal, ctx, suite, limits)[: max(args.top, 0)]:
        print(f"{cand.args}\tscore={cand.score}\tfeatures={cand.bits}")
    return EXIT_TRUE


def cmd_batch(args) -> int:
    records = _load(args.corpus, load_corpus)
    suite = _suite(args.assertions_dir)
    rows = batch_evaluate(records, suite)
    ids = [name for name, _ in suite]
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_feature_matrix(rows, ids, fh)
    else:
        write_feature_matrix(rows, ids, sys.stdout)
    errors = sum(1 for r in rows if r.error)
    print(f"rows={len(rows)} errors={errors}", file=sys.stdout if args.out and args.out != "-" else sys.stderr)
    return EXIT_TRUE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lifter", description="Evaluate LiFtEr induction heuristics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="evaluate one assertion on one induct invocation")
    p.add_argument("--goal", required=True)
    p.add_argument("--context", required=True)
    p.add_argument("--assertion", required=True)
    p.add_argument("--induct", required=True, help='e.g. "induct xs ys rule: itrev.induct"')
    p.add_argument("--explain", action="store_true", help="print a witness/counterexample trace")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("parse", help="print the AST and canonical form of an assertion")
    p.add_argument("--assertion", required=True)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("suggest", help="rank candidate induct invocations")
    p.add_argument("--goal", required=True)
    p.add_argument("--context", required=True)
    p.add_argument("--assertions-dir", required=True)
    p.add_argument("--max-ind-terms", type=int, default=2)
    p.add_argument("--max-arbitrary", type=int, default=1)
    p.add_argument("--top", type=int, default=10)
    p.set_defaults(func=cmd_suggest)

    p = sub.add_parser("batch", help="extract a feature matrix from a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--assertions-dir", required=True)
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_batch)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Failure as exc:
        print(f"lifter: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
