"""Compiled vs pure-Python kernel timings.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Both backends are imported side by side, so no environment variable is needed.
"""

import argparse
import sys
import time

import numpy as np

from perronbound import kernels
from perronbound.generators import named_graph, random_connected


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases():
    dense = random_connected(40, 0.2, seed=1).adjacency_matrix()
    path = named_graph("path", 30).adjacency_matrix()
    spd = (np.linalg.eigvalsh(dense)[-1] + 1.0) * np.eye(40) - dense
    rhs = np.ones(40)
    return [
        ("connected_masks n=6", lambda k: k.connected_masks(6)),
        ("analyze_masks n=5 (728 graphs)",
         lambda k, m=kernels.connected_masks(5): k.analyze_masks(5, m, 1e-12, 10**6)),
        ("analyze_masks n=6 (first 2000)",
         lambda k, m=kernels.connected_masks(6)[:2000]: k.analyze_masks(6, m, 1e-12, 10**6)),
        ("power_iteration G(40, 0.2)", lambda k: k.power_iteration(dense, 1e-12, 10**6)),
        ("power_iteration P_30", lambda k: k.power_iteration(path, 1e-12, 10**6)),
        ("jacobi_eigh G(40, 0.2)", lambda k: k.jacobi_eigh(dense, 1e-13, 50)),
        ("cholesky_solve 40x40", lambda k: k.cholesky_solve(spd, rhs)),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    found = kernels.backends()
    if "compiled" not in found:
        print("compiled extension not built; only the Python backend is available",
              file=sys.stderr)
    names = [b for b in ("compiled", "python") if b in found]
    print(f"{'kernel':<34}" + "".join(f"{b:>12}" for b in names) + f"{'speedup':>10}")
    for label, fn in cases():
        times = [best_of(lambda k=found[b]: fn(k), args.repeat) for b in names]
        speed = f"{times[1] / times[0]:>9.0f}x" if len(times) == 2 else ""
        print(f"{label:<34}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times) + speed)


if __name__ == "__main__":
    main()
