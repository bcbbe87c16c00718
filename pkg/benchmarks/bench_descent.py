"""Compare the compiled descent kernel against the pure-Python fallback.

Runs the same certification-sweep workload through both backends and
reports wall time and the relative speedup. Invoke from the repository
root:

    python benchmarks/bench_descent.py [--rho-points N] [--tau-points M] [--repeats K]
"""

import argparse
import math
import time

import hwtheta.descent_path as dp
import hwtheta.saddle_geometry as sg
from hwtheta import _descent_py

try:
    from hwtheta import _descent_cy
except ImportError:
    _descent_cy = None


def build_workload(rho_points: int, tau_points: int):
    lo, hi = math.log(0.05), math.log(10.0)
    rhos = [
        math.exp(lo + (hi - lo) * i / (rho_points - 1)) for i in range(rho_points)
    ]
    taus = [50.0 * (j + 1) / tau_points for j in range(tau_points)]
    jobs = []
    for rho in rhos:
        sd = sg.saddle_data(rho)
        jobs.append(dp._expansion_data(sd))
    return jobs, taus


def run(backend, jobs, taus, repeats: int) -> float:
    best = math.inf
    sink = 0.0
    for _ in range(repeats):
        start = time.perf_counter()
        for rho_eff, sx, cx, h2, h3, mode in jobs:
            out = backend.trace(rho_eff, sx, cx, h2, h3, mode, taus, False)
            sink += abs(out[-1][2])
        best = min(best, time.perf_counter() - start)
    assert math.isfinite(sink)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rho-points", type=int, default=25)
    parser.add_argument("--tau-points", type=int, default=200)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    jobs, taus = build_workload(args.rho_points, args.tau_points)
    cells = args.rho_points * args.tau_points
    print(
        f"workload: {args.rho_points} rho columns x {args.tau_points} tau targets "
        f"({cells} cells), best of {args.repeats}"
    )

    t_py = run(_descent_py, jobs, taus, args.repeats)
    print(f"python kernel:   {t_py * 1e3:9.2f} ms  ({cells / t_py:,.0f} cells/s)")

    if _descent_cy is None:
        print("compiled kernel: not built (pip install -e . rebuilds it)")
        return 0

    t_cy = run(_descent_cy, jobs, taus, args.repeats)
    print(f"compiled kernel: {t_cy * 1e3:9.2f} ms  ({cells / t_cy:,.0f} cells/s)")
    print(f"speedup: {t_py / t_cy:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
