"""Timing comparison of the compiled and pure-Python integration kernels.

Runs the same workloads through both backends and reports steps/second and
the speedup.  Usage: python3 benchmarks/bench_kernels.py [--steps N]
"""

import argparse
import time

from acdopt import ModelParams, _kernels_py
from acdopt.dynamics import kernel_policy_args
from acdopt.infinite_horizon import optimal_policy

try:
    from acdopt import _speedups
except ImportError:
    _speedups = None


def _workload(params, n_steps):
    policy = optimal_policy(params)
    a, b, alpha, strategic, *pols = kernel_policy_args(policy, None, params)
    return (0.3, 1e-3, n_steps, a, b, alpha, strategic, *pols,
            params.z, 1.0, params.fB_slope, params.k_B, True, 1e-9)


def _time(fn, args, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=200_000,
                        help="RK4 steps per call (default 200000)")
    parser.add_argument("--repeats", type=int, default=3,
                        help="repetitions, best time kept (default 3)")
    args = parser.parse_args()

    params = ModelParams(a=1.0, b=0.0, alpha_R=0.5, z=0.5, k_B=0.25)
    work = _workload(params, args.steps)

    print(f"workload: feedback policy, {args.steps} RK4 steps, "
          f"best of {args.repeats}")
    results = {}
    for label, fn in [
        ("python simulate_path", _kernels_py.simulate_path),
        ("python final_state_and_cost", _kernels_py.final_state_and_cost),
    ] + ([
        ("cython simulate_path", _speedups.simulate_path),
        ("cython final_state_and_cost", _speedups.final_state_and_cost),
    ] if _speedups is not None else []):
        elapsed = _time(fn, work, args.repeats)
        results[label] = elapsed
        print(f"  {label:30s} {elapsed * 1e3:9.1f} ms   "
              f"{args.steps / elapsed / 1e6:7.2f} Msteps/s")

    if _speedups is None:
        print("compiled extension not available; no speedup to report")
        return
    for name in ("simulate_path", "final_state_and_cost"):
        ratio = results[f"python {name}"] / results[f"cython {name}"]
        print(f"speedup {name}: {ratio:.1f}x")


if __name__ == "__main__":
    main()
