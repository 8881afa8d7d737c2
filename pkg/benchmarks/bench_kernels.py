"""Compare the compiled and numpy kernels.

    python3 benchmarks/bench_kernels.py [--trials 200000] [--repeat 3]

Both backends get identical inputs; the script checks that their outputs
agree before reporting timings.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from courtmix import kernels
from courtmix.court import reference_configuration
from courtmix.dynamics import EGO_POSITION, sample_step_indices


def best_of(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=200_000)
    ap.add_argument("--games", type=int, default=8)
    ap.add_argument("--walk", type=int, default=200_000, help="length of the sequence-application walk")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = kernels.backends()
    rng = np.random.default_rng(0)
    steps = sample_step_indices(rng, (args.trials, args.games - 1))
    walk = sample_step_indices(rng, args.walk)
    c0 = reference_configuration()
    ego = c0[EGO_POSITION["first"]]
    where = c0.where()

    print(f"active backend: {kernels.BACKEND}")
    print(f"{'kernel':<16}{'backend':<10}{'seconds':>10}{'speedup':>10}")
    for kernel, call in (
        ("encounter_all", lambda impl: kernels.encounter_all(where, ego, steps, backend=impl)),
        ("apply_steps", lambda impl: kernels.apply_steps(c0.seating, walk, backend=impl)),
    ):
        results, times = {}, {}
        for name, impl in backends.items():
            times[name], results[name] = best_of(lambda: call(impl), args.repeat)
        if len({repr(r) for r in results.values()}) != 1:
            raise SystemExit(f"{kernel}: backends disagree")
        base = times["python"]
        for name, t in times.items():
            print(f"{kernel:<16}{name:<10}{t:>10.4f}{base / t:>9.1f}x")


if __name__ == "__main__":
    main()
