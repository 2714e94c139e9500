"""Compare the compiled and pure-Python subexpression kernels.

    python benchmarks/bench_kernels.py [--group A3] [--lengths 8 10 12 14] [--repeat 3]

Both kernels are run on the same words and their outputs compared before any
timing is reported.
"""

from __future__ import annotations

import argparse
import random
import sys
import timeit

import numpy as np

from deodhar_lab import _defects_py, kernels
from deodhar_lab.coxeter import coxeter_system


def _random_word(W, m, rng):
    return tuple(rng.choice(W.generators) for _ in range(m))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--group", default="A3")
    ap.add_argument("--lengths", type=int, nargs="+", default=[8, 10, 12, 14])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)

    if not kernels.compiled_available():
        print("compiled kernel not built; run `pip install --no-build-isolation -e .` first", file=sys.stderr)
        return 1
    from deodhar_lab import _defects

    W = coxeter_system(args.group)
    rng = random.Random(args.seed)
    table = kernels.element_table(W, max(args.lengths))
    target = table.elements[len(table) // 2]
    print(f"group {W.descriptor}, {len(table)} elements in table")
    print(f"{'m':>3} {'2^m':>8} {'kernel':>10} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for m in args.lengths:
        word = _random_word(W, m, rng)
        for name, call in (
            ("histogram", lambda impl: kernels.defect_histogram(table, word, impl=impl)),
            ("codes", lambda impl: kernels.expressing_codes(table, word, target, impl=impl)),
        ):
            a, b = call(_defects_py), call(_defects)
            same = np.array_equal(a, b) if name == "histogram" else all(np.array_equal(x, y) for x, y in zip(a, b))
            if not same:
                print(f"kernels disagree on {word}", file=sys.stderr)
                return 1
            tp = min(timeit.repeat(lambda: call(_defects_py), number=1, repeat=args.repeat))
            tc = min(timeit.repeat(lambda: call(_defects), number=1, repeat=args.repeat))
            print(f"{m:>3} {2**m:>8} {name:>10} {tp:>10.4f} {tc:>10.4f} {tp / tc:>7.0f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
