"""Feature matrix for a labeled corpus plus per-heuristic agreement with labels.

For each assertion reports how often it is true on records labeled
appropriate and on records labeled inappropriate; a reliable heuristic
scores high on the first and low on the second.
"""

import argparse
import sys
from pathlib import Path

from lifter.suggest import batch_evaluate, load_corpus, load_suite, write_feature_matrix

ROOT = Path(__file__).resolve().parent.parent


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--corpus", default=ROOT / "fixtures/list/corpus.jsonl", type=Path)
    ap.add_argument("--assertions-dir", default=ROOT / "heuristics", type=Path)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    suite = load_suite(args.assertions_dir)
    rows = batch_evaluate(load_corpus(args.corpus), suite, workers=args.workers)
    write_feature_matrix(rows, [n for n, _ in suite], sys.stdout)

    print()
    print(f"{'assertion':<28} {'true|good':>10} {'true|bad':>10}")
    for i, (name, _) in enumerate(suite):
        good = [r.features[i] for r in rows if r.features is not None and r.label is True]
        bad = [r.features[i] for r in rows if r.features is not None and r.label is False]
        print(f"{name:<28} {sum(good):>5}/{len(good):<4} {sum(bad):>5}/{len(bad):<4}")


if __name__ == "__main__":
    main()
