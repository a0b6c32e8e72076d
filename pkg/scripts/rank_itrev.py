"""Rank every candidate induct invocation for the itrev goal.

Prints the full ranking with per-heuristic feature bits, then the same
ranking with rule arity matching switched off, so the effect of that
enumeration restriction is visible side by side.
"""

import argparse
from pathlib import Path

from lifter.context import load_context_file
from lifter.suggest import Limits, load_suite, suggest
from lifter.terms import load_goal

ROOT = Path(__file__).resolve().parent.parent


def show(title, ranked, names):
    print(f"# {title}")
    print(f"{'score':>5}  {' '.join(names)}  invocation")
    for c in ranked:
        bits = " ".join(f"{int(v):>{len(n)}}" for n, (_, v) in zip(names, c.features))
        print(f"{c.score:>5}  {bits}  {c.args}")
    print()


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--goal", default=ROOT / "fixtures/list/itrev.goal", type=Path)
    ap.add_argument("--context", default=ROOT / "fixtures/list/list.ctx.json", type=Path)
    ap.add_argument("--assertions-dir", default=ROOT / "heuristics", type=Path)
    ap.add_argument("--max-ind-terms", type=int, default=2)
    ap.add_argument("--max-arbitrary", type=int, default=1)
    args = ap.parse_args()

    ctx = load_context_file(args.context)
    goal = load_goal(args.goal.read_text(), ctx.signature)
    suite = load_suite(args.assertions_dir)
    names = [n for n, _ in suite]
    for match in (True, False):
        limits = Limits(args.max_ind_terms, args.max_arbitrary, match_rule_arity=match)
        show(f"match_rule_arity={match}", suggest(goal, ctx, suite, limits), names)


if __name__ == "__main__":
    main()
