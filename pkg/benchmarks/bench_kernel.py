"""Timing comparison of the pure Python and compiled kernels.

Runs expand_tail on random words and rref_mod_p on random matrices with
both backends and prints the per-call times and the speedup.  The
compiled column is skipped when the extension is not built.
"""

from __future__ import annotations

import argparse
import random
import time

from leibniz_gsb import _kernel_py

try:
    from leibniz_gsb import _kernel_c
except ImportError:
    _kernel_c = None


def _time(fn, args_list, repeat):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        for a in args_list:
            fn(*a)
        dt = (time.perf_counter() - t0) / len(args_list)
        best = dt if best is None else min(best, dt)
    return best


def _expand_cases(rng, length, count):
    cases = []
    for _ in range(count):
        word = tuple(rng.randrange(3) for _ in range(length))
        parities = tuple(rng.randrange(2) for _ in range(length))
        cases.append((word, parities))
    return cases


def _matrix_cases(rng, rows, cols, prime, count):
    cases = []
    for _ in range(count):
        m = [[rng.randrange(prime) for _ in range(cols)]
             for _ in range(rows)]
        cases.append((m, prime))
    return cases


def _report(name, label, cases, repeat):
    t_py = _time(getattr(_kernel_py, name), cases, repeat)
    line = "%-28s pure %10.1f us" % (label, t_py * 1e6)
    if _kernel_c is not None:
        t_c = _time(getattr(_kernel_c, name), cases, repeat)
        line += "   compiled %10.1f us   speedup %5.1fx" % (t_c * 1e6,
                                                            t_py / t_c)
    print(line)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--lengths", default="4,6,8,10",
                        help="comma-separated tail lengths")
    parser.add_argument("--rows", type=int, default=60)
    parser.add_argument("--cols", type=int, default=80)
    parser.add_argument("--prime", type=int, default=251)
    parser.add_argument("--count", type=int, default=20,
                        help="distinct random cases per measurement")
    parser.add_argument("--repeat", type=int, default=5,
                        help="take the best of this many passes")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    rng = random.Random(args.seed)
    if _kernel_c is None:
        print("compiled kernel not built; timing the pure backend only")
    for length in [int(x) for x in args.lengths.split(",")]:
        cases = _expand_cases(rng, length, args.count)
        _report("expand_tail", "expand_tail (length %d)" % length, cases,
                args.repeat)
    cases = _matrix_cases(rng, args.rows, args.cols, args.prime, args.count)
    _report("rref_mod_p", "rref_mod_p (%dx%d)" % (args.rows, args.cols),
            cases, args.repeat)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
