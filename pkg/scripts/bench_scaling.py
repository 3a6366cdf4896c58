#!/usr/bin/env python3
"""Reproduce the runtime-scaling measurements behind the acceptance gates.

Two sweeps, both printed as CSV with a short summary at the end:

  flat    wall time of the outerplanar program at fixed k over a size
          ladder, plus the fitted log-log slope (the near-linear claim);
  leveled median wall time of the leveled program at fixed n and k for
          each requested depth, plus consecutive-depth ratios (the
          table-width blowup claim, 8x per level in theory).

Times are best-of-`--reps` per point to damp scheduler noise.  Instances
are regenerated from seeds, so two runs on one machine time identical
graphs.
"""

import argparse
import statistics
import sys
import time

import numpy as np

from dks.generators import GenSpec, gen_bouterplanar, gen_outerplanar
from dks.solve import solve_bouterplanar, solve_outerplanar


def timed(fn) -> float:
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def flat_sweep(sizes, k, rho, reps, seed, out):
    print("solver,n,k,best_seconds,cells", file=out)
    times = []
    for n in sizes:
        g = gen_outerplanar(GenSpec(n=n, rho=rho, seed=seed))
        best, cells = None, 0
        for _ in range(reps):
            t0 = time.perf_counter()
            cells = solve_outerplanar(g, min(k, n)).stats.get("cells", 0)
            t = time.perf_counter() - t0
            best = t if best is None else min(best, t)
        times.append(best)
        print(f"outerplanar,{n},{min(k, n)},{best:.6f},{cells}", file=out)
    slope = float(np.polyfit(np.log(sizes), np.log(times), 1)[0])
    print(f"# flat log-log slope over {list(sizes)}: {slope:.3f}", file=out)
    return slope


def leveled_sweep(n, depths, k, rho, seeds, reps, out):
    print("solver,b,n,k,median_seconds", file=out)
    medians = {}
    for b in depths:
        per_instance = []
        for seed in range(seeds):
            g = gen_bouterplanar(GenSpec(n=n, b=b, rho=rho, seed=seed))
            per_instance.append(min(
                timed(lambda: solve_bouterplanar(g, min(k, n)))
                for _ in range(reps)))
        medians[b] = statistics.median(per_instance)
        print(f"bouterplanar,{b},{n},{min(k, n)},{medians[b]:.6f}", file=out)
    for lo, hi in zip(depths, depths[1:]):
        print(f"# depth {hi} / depth {lo} median ratio: "
              f"{medians[hi] / medians[lo]:.2f}", file=out)
    return medians


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="1000,10000,100000",
                    help="comma-separated n ladder for the flat sweep")
    ap.add_argument("--k", type=int, default=10)
    ap.add_argument("--rho", type=float, default=0.5)
    ap.add_argument("--reps", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--depth-n", type=int, default=200,
                    help="fixed n for the leveled sweep")
    ap.add_argument("--depths", default="2,3")
    ap.add_argument("--depth-seeds", type=int, default=5,
                    help="instances per depth (median over these)")
    ap.add_argument("--skip-flat", action="store_true")
    ap.add_argument("--skip-leveled", action="store_true")
    ns = ap.parse_args(argv)

    sizes = [int(s) for s in ns.sizes.split(",") if s]
    depths = [int(s) for s in ns.depths.split(",") if s]
    out = sys.stdout
    if not ns.skip_flat:
        flat_sweep(sizes, ns.k, ns.rho, ns.reps, ns.seed, out)
    if not ns.skip_leveled:
        leveled_sweep(ns.depth_n, depths, ns.k, ns.rho,
                      ns.depth_seeds, ns.reps, out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
