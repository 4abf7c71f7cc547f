"""Compiled vs pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Times the two hot loops (the direct zeta power sum and the Bessel zero scan)
in both backends, checks that they agree, and prints one line per kernel.
"""
from __future__ import annotations

import argparse
import sys
import timeit

from conetorsion._kernels import load_compiled, load_python

CASES = {
    # 1e5 terms of a p=3 coexact row at s = 8
    "power_sum": ("power_sum", (1.0, [1.0, 2.0, 2.0, 3.0], 0.0, 4.0, 4.0, 1.0, 8.0, 1, 100_000)),
    # all J_mu and hat-J_mu zeros below 2000 for mu = 7.5
    "bessel_zeros": ("bessel_zeros", (7.5, -1.5, True, -1, 2000.0, 1e-13)),
}


def _time(fn, args, repeat: int) -> float:
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    py, cy = load_python(), load_compiled()
    if cy is None:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1
    print(f"{'kernel':<14}{'python [s]':>12}{'cython [s]':>12}{'speedup':>10}  agreement")
    for name, (attr, fargs) in CASES.items():
        a, b = getattr(py, attr)(*fargs), getattr(cy, attr)(*fargs)
        if isinstance(a, list):
            agree = len(a) == len(b) and max(abs(x - y) / x for x, y in zip(a, b)) < 1e-12
            note = f"{len(a)} zeros"
        else:
            agree = abs(a - b) <= 1e-14 * abs(a)
            note = f"sum {a:.15g}"
        tp, tc = _time(getattr(py, attr), fargs, args.repeat), _time(getattr(cy, attr), fargs, args.repeat)
        print(f"{name:<14}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x  {'ok' if agree else 'MISMATCH'} ({note})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
