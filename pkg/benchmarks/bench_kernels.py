"""Time the dynamics under the numba and numpy kernel backends.

Usage::

    python3 benchmarks/bench_kernels.py [--repeat 5] [--players 40] [--resources 30]

Both backends produce identical traces; the script checks that before
reporting times.  The first numba call compiles (or loads the on-disk cache),
so one warm-up run is excluded from the timings.
"""
import argparse
import statistics
import time

import numpy as np

from brdlab import kernels
from brdlab.dynamics import BrdConfig, run_brd
from brdlab.experiment import choose_start
from brdlab.generators import random_explicit_game, random_network_game
from brdlab.smoothing import PerturbationSpec, perturb


def workloads(players, resources, seed):
    rng = np.random.default_rng(seed)
    explicit = random_explicit_game("tabular", players, resources, rng, strategies_per_player=(8, 16),
                                    max_strategy_size=6)
    network = random_network_game("polynomial", players, rng, max_nodes=40, max_edges=160, degree=2)
    out = []
    for name, skeleton in (("explicit", explicit), ("network", network)):
        game = perturb(skeleton, PerturbationSpec(4.0, "window", seed))
        start = choose_start(game, "worst-of-k", np.random.default_rng(seed), 16)
        out.append((name, game, start))
    return out


def time_backend(backend, game, start, config, repeat):
    kernels.set_backend(backend)
    trace = run_brd(game, start, config)  # warm-up
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        run_brd(game, start, config)
        samples.append(time.perf_counter() - t0)
    return trace, samples


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--players", type=int, default=40)
    ap.add_argument("--resources", type=int, default=30)
    ap.add_argument("--epsilon", type=float, default=0.01)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    backends = [b for b in ("numba", "numpy") if b in kernels.BACKENDS]
    print(f"{'workload':10s} {'rule':14s} {'moves':>6s} " + " ".join(f"{b + ' ms':>10s}" for b in backends)
          + ("   speedup" if len(backends) == 2 else ""))
    for name, game, start in workloads(args.players, args.resources, args.seed):
        for rule in ("first", "best-response", "max-gain"):
            config = BrdConfig(args.epsilon, rule, seed=args.seed)
            traces, medians = [], []
            for b in backends:
                trace, samples = time_backend(b, game, start, config, args.repeat)
                traces.append(trace)
                medians.append(statistics.median(samples) * 1e3)
            if any(t != traces[0] for t in traces[1:]):
                raise SystemExit(f"backends disagree on {name}/{rule}")
            line = f"{name:10s} {rule:14s} {traces[0].iterations:6d} " + " ".join(f"{m:10.2f}" for m in medians)
            if len(medians) == 2:
                line += f"   {medians[1] / medians[0]:7.2f}x"
            print(line)


if __name__ == "__main__":
    main()
