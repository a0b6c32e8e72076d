"""Compare the evaluator with the brute-force reference on random triples.

Reports mismatches, the fraction of true verdicts and throughput for both
implementations. The reference lives in tests/naive.py.
"""

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from generators import random_assertion, random_triple  # noqa: E402
from naive import naive_evaluate  # noqa: E402
from lifter.evaluator import evaluate  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-n", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-depth", type=int, default=6)
    ap.add_argument("--max-quants", type=int, default=4)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    cases = []
    for _ in range(args.n):
        goal, ctx, inv = random_triple(rng)
        cases.append((random_assertion(rng, args.max_depth, args.max_quants), goal, ctx, inv))

    t0 = time.perf_counter()
    fast = [evaluate(*c) for c in cases]
    t1 = time.perf_counter()
    slow = [naive_evaluate(*c) for c in cases]
    t2 = time.perf_counter()

    mismatches = sum(a != b for a, b in zip(fast, slow))
    print(f"triples={args.n} mismatches={mismatches} true={sum(fast) / args.n:.3f}")
    print(f"evaluator {t1 - t0:.2f}s  reference {t2 - t1:.2f}s")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
