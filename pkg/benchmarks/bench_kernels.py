"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Prints wall time per workload for each backend, the speed-up, and the
largest relative disagreement between the two.
"""

import argparse
import math
import time

from torsionlab import _backend

WORKLOADS = {
    "J zeros, order 0, 2000 zeros": lambda k: k.find_zeros(0, 0.0, 2000, math.inf),
    "J' zeros, order 25.5, 2000 zeros": lambda k: k.find_zeros(1, 25.5, 2000, math.inf),
    "G- zeros, order 1.5, up to 3000": lambda k: k.find_zeros(3, 1.5, -1, 3000.0),
    "J/J' values, 20000 points": lambda k: [k.jv_jvp(3.7, 0.05 + 0.01 * i)[0] for i in range(20000)],
    "log I values, 20000 points": lambda k: [k.iv_log(12.0 + (i % 40), 0.1 + 0.02 * i)[0] for i in range(20000)],
}


def best_time(fn, repeat):
    best, out = math.inf, None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _backend.compiled is None:
        print("compiled backend not available; build with `pip install -e . --no-build-isolation`")
        return
    print(f"{'workload':36s} {'python [s]':>11s} {'compiled [s]':>13s} {'speed-up':>9s} {'max rel diff':>13s}")
    for name, work in WORKLOADS.items():
        tp, a = best_time(lambda: work(_backend.pure), args.repeat)
        tc, b = best_time(lambda: work(_backend.compiled), args.repeat)
        diff = max(abs(x - y) / max(abs(y), 1e-300) for x, y in zip(a, b))
        print(f"{name:36s} {tp:11.4f} {tc:13.4f} {tp / tc:8.1f}x {diff:13.2e}")


if __name__ == "__main__":
    main()
