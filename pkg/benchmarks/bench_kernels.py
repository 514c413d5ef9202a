"""Compare the compiled and NumPy kernel backends on representative workloads.

    python benchmarks/bench_kernels.py [--repeat N]

Each workload is timed ``repeat`` times per backend and the best time is
reported, with the speedup of the compiled backend and the largest absolute
difference between the two outputs.
"""

import argparse
import math
import time

import numpy as np

from qbcharge import kernels


def workloads(rng):
    n = 200_000
    a, b, _ = rng.dirichlet([1, 1, 1], size=n).T
    eta1 = np.sqrt(a) * np.exp(1j * rng.uniform(0, 2 * math.pi, n))
    eta2 = np.sqrt(b) * np.exp(1j * rng.uniform(0, 2 * math.pi, n))
    theta = rng.uniform(0, math.pi / 2, n)
    lt = rng.uniform(0, 10, n)
    x = rng.normal(size=(2000, 4, 4)) + 1j * rng.normal(size=(2000, 4, 4))
    herm = x + np.conj(np.swapaxes(x, 1, 2))
    lt_dense = np.linspace(0, 50, 1_000_001)
    return {
        "mu_array (1e6 times, R=0.3)": lambda k: k.mu_array(0.3, lt_dense),
        "mu_array (1e6 times, R=5)": lambda k: k.mu_array(5.0, lt_dense),
        "row_observables (2e5 rows)": lambda k: k.row_observables(eta1, eta2, theta, lt),
        "rk4_damped (2e5 steps)": lambda k: k.rk4_damped(2.0, 10.0, 200_000)[1],
        "jacobi_eigh (2000 x 4x4)": lambda k: k.jacobi_eigh(herm)[0],
    }


def best_of(fn, repeat):
    best, out = math.inf, None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    found = kernels.available_backends()
    if "cython" not in found:
        print("compiled backend not built; only the NumPy backend is available")
    names = sorted(found)
    header = f"{'workload':<30}" + "".join(f"{n + ' [s]':>14}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10}{'max|diff|':>12}"
    print(header)
    for label, fn in workloads(np.random.default_rng(0)).items():
        times, outs = [], []
        for name in names:
            t, out = best_of(lambda: fn(found[name]), args.repeat)
            times.append(t)
            outs.append(np.asarray(out))
        line = f"{label:<30}" + "".join(f"{t:14.4f}" for t in times)
        if len(names) == 2:
            py, cy = times[names.index("python")], times[names.index("cython")]
            diff = float(np.nanmax(np.abs(outs[0] - outs[1])))
            line += f"{py / cy:9.1f}x{diff:12.1e}"
        print(line)


if __name__ == "__main__":
    main()
