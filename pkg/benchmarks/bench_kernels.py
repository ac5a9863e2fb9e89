"""Time the compiled kernels against their pure-Python twins.

    python benchmarks/bench_kernels.py [--repeat N]

Both backends are called directly on the same inputs, and the results are
checked for equality before any timing is reported.
"""

import argparse
import sys
import timeit

from tribrackets import AlexanderSpec, alexander_tribracket, elimination_plan, link_diagram
from tribrackets import _pykernels

try:
    from tribrackets import _ckernels
except ImportError:
    _ckernels = None


def cases():
    X9 = alexander_tribracket(AlexanderSpec(9, 2, 5))
    X8 = alexander_tribracket(AlexanderSpec(8, 3, 7))
    tabs = lambda X: [X.flat] + [tuple(t.ravel().tolist()) for t in X._inv]  # noqa: E731
    plan_l7 = [s.as_tuple() for s in elimination_plan(link_diagram("L7a1"))]
    plan_k7 = [s.as_tuple() for s in elimination_plan(link_diagram("7_4"))]
    yield "horizontal_violations n=9", "horizontal_violations", (X9.flat, 9, 100)
    yield "delta_witness n=9", "delta_witness", (X9.flat, 9)
    yield "count_plan L7a1 n=9", "count_plan", (*tabs(X9), 9, plan_l7)
    yield "count_plan 7_4 n=8", "count_plan", (*tabs(X8), 8, plan_k7)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    if _ckernels is None:
        print("compiled extension not built; only the python backend is available", file=sys.stderr)
        return 1

    print(f"{'kernel':<28}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for label, fn, fargs in cases():
        py, cy = getattr(_pykernels, fn), getattr(_ckernels, fn)
        if py(*fargs) != cy(*fargs):
            print(f"{label}: backends disagree", file=sys.stderr)
            return 2
        t_py = min(timeit.repeat(lambda: py(*fargs), number=1, repeat=args.repeat)) * 1e3
        t_cy = min(timeit.repeat(lambda: cy(*fargs), number=1, repeat=args.repeat)) * 1e3
        print(f"{label:<28}{t_py:>12.2f}{t_cy:>12.3f}{t_py / max(t_cy, 1e-9):>9.0f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
