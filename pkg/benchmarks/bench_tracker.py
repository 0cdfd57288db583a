"""Time the python and compiled path trackers on the same start systems.

    python benchmarks/bench_tracker.py [--repeat 3] [--quick]

Both trackers run every path of each problem with the same random gamma; the
script reports wall time per backend, the speedup, and the largest endpoint
disagreement between them.
"""
import argparse
import time

import numpy as np

from schubreal.solver import SchubertProblem, SolverConfig, build_square_system
from schubreal.solver.solve import _tracker_params, start_points
from schubreal.solver.tracking import BACKENDS, tracker_class

PROBLEMS = {
    "Gr(2,4)": lambda: SchubertProblem.grassmannian(2, 4, [(a, [1]) for a in range(4)]),
    "OG(3)": lambda: SchubertProblem.orthogonal(3, [(a, [1]) for a in range(6)]),
    "Gr(2,5)": lambda: SchubertProblem.grassmannian(2, 5, [(a, [1]) for a in range(6)]),
    "Gr(3,6)": lambda: SchubertProblem.grassmannian(3, 6, [(a, [1]) for a in range(9)]),
    "OG(4)": lambda: SchubertProblem.orthogonal(4, [(a, [1]) for a in range(10)]),
}


def run_paths(backend, system, gamma, params):
    cls = tracker_class(backend)
    tracker = cls(system.coeffs, system.exps, system.term_eq, system.degrees, gamma, params)
    t0 = time.perf_counter()
    out = [tracker.track(x0) for x0 in start_points(system.degrees)]
    return time.perf_counter() - t0, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="skip the two largest problems")
    args = ap.parse_args()
    names = list(PROBLEMS)[:3] if args.quick else list(PROBLEMS)
    backends = [b for b in ("python", "cython") if b in BACKENDS]
    if len(backends) < 2:
        print("compiled backend unavailable; timing python only")
    params = _tracker_params(SolverConfig())
    gamma = complex(np.exp(2j * np.pi * np.random.default_rng(0).random()))
    header = f"{'problem':<9} {'paths':>6} " + " ".join(f"{b + ' [s]':>12}" for b in backends)
    print(header + (f" {'speedup':>8} {'max |dx|':>9}" if len(backends) == 2 else ""))
    for name in names:
        system = build_square_system(PROBLEMS[name]())
        times, results = {}, {}
        for b in backends:
            best = np.inf
            for _ in range(args.repeat):
                t, out = run_paths(b, system, gamma, params)
                best = min(best, t)
            times[b], results[b] = best, out
        line = f"{name:<9} {system.bezout:>6} " + " ".join(f"{times[b]:>12.4f}" for b in backends)
        if len(backends) == 2:
            diff = max((float(np.max(np.abs(p[1] - c[1]))) if p[0] == c[0] == 0 else 0.0)
                       for p, c in zip(results["python"], results["cython"]))
            line += f" {times['python'] / times['cython']:>8.1f} {diff:>9.1e}"
        print(line)


if __name__ == "__main__":
    main()
