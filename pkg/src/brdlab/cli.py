"""Command line entry point: ``brdlab {run,perturb,brd,oracle,lemma,bound}``.

Exit codes: 0 success, 2 invalid input, 3 a bound was violated (or a run
hit its iteration cap).
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .dynamics import BrdConfig, PivotRule, run_brd
from .experiment import START_POLICIES, ConfigError, ExperimentConfig, choose_start, default_threads, run_experiment
from .game import GameValidationError, potential
from .io import load_instance, parse_profile, save_instance
from .lemma import MODEL_KINDS, BoundQuery, LemmaParams, iteration_bound, lemma_bound_rhs, lemma_mc_estimate
from .oracle import BudgetExceeded, brute_force_is_alpha_pne, brute_force_min_potential
from .smoothing import FAMILY_KINDS, PerturbationSpec, perturb

EXIT_OK, EXIT_INVALID, EXIT_BOUND = 0, 2, 3


def _human(profile):
    # players and resources are counted from 1 in printed output
    return "  ".join(f"p{i + 1}:{{{','.join(f'r{r + 1}' for r in s)}}}" for i, s in enumerate(profile))


def cmd_run(args):
    config = ExperimentConfig.load(args.config)
    if args.seed is not None:
        config = ExperimentConfig.from_dict({**config.to_dict(), "seed": args.seed})
    report = run_experiment(config, threads=args.threads)
    report.write(args.out)
    for c in report.cells:
        flag = "ok" if c.ok else "FAIL"
        print(f"{flag:4s} phi={c.phi:g} eps={c.epsilon:g} pivot={c.pivot:13s} "
              f"mean T={c.mean:.2f} max T={c.max} bound={c.smoothed_bound:.4g} ratio={c.ratio:.3g}")
    return EXIT_OK if report.ok else EXIT_BOUND


def cmd_perturb(args):
    skeleton = load_instance(args.input)
    game = perturb(skeleton, PerturbationSpec(args.phi, args.family, args.seed))
    save_instance(game, args.out)
    return EXIT_OK


def cmd_brd(args):
    game = load_instance(args.input)
    rng = np.random.default_rng(args.seed)
    start = choose_start(game, args.start, rng, args.k)
    trace = run_brd(game, start, BrdConfig(args.epsilon, PivotRule(args.pivot), seed=args.seed))
    if args.json:
        print(json.dumps({
            "status": trace.status.value, "iterations": trace.iterations, "cap": trace.cap,
            "start_profile": [list(s) for s in trace.start_profile],
            "final_profile": [list(s) for s in trace.final_profile],
            "potentials": trace.potentials,
            "moves": [{"player": mv.player, "from": list(mv.from_strategy), "to": list(mv.to_strategy),
                       "cost_before": mv.cost_before, "cost_after": mv.cost_after} for mv in trace.moves],
        }, indent=1))
    else:
        print(f"status: {trace.status.value}")
        print(f"iterations: {trace.iterations} (worst-case cap {trace.cap:.6g})")
        print(f"start: {_human(trace.start_profile)}  potential {trace.start_potential:.6g}")
        print(f"final: {_human(trace.final_profile)}  potential {potential(game, trace.final_profile):.6g}")
    if not trace.converged or trace.iterations > trace.cap:
        return EXIT_BOUND
    return EXIT_OK


def cmd_oracle(args):
    game = load_instance(args.input)
    if args.min_potential:
        profile, value = brute_force_min_potential(game)
        print(json.dumps({"profile": [list(s) for s in profile], "potential": value}))
        return EXIT_OK
    profile = parse_profile(args.check)
    verdict = brute_force_is_alpha_pne(game, profile, args.alpha)
    print(json.dumps({"alpha": args.alpha, "is_alpha_pne": verdict}))
    return EXIT_OK


def cmd_lemma(args):
    p = LemmaParams(args.mu, args.alpha, args.beta, args.phi)
    mean, stderr = lemma_mc_estimate(p, args.family, args.trials, args.seed)
    rhs = lemma_bound_rhs(p)
    print(json.dumps({"mean": mean, "stderr": stderr, "bound": rhs, "holds": mean - 3 * stderr <= rhs}))
    return EXIT_OK if mean - 3 * stderr <= rhs else EXIT_BOUND


def cmd_bound(args):
    q = BoundQuery(args.model, args.n, args.m, args.epsilon, args.phi, args.d, args.degree, args.d_tilde)
    cap, smoothed = iteration_bound(q)
    print(json.dumps({"exhaustive_cap": cap, "smoothed_expectation_bound": smoothed}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="brdlab", description="Approximate better-response dynamics in smoothed congestion games")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run an experiment grid")
    r.add_argument("--config", required=True)
    r.add_argument("--out", required=True)
    r.add_argument("--seed", type=int, default=None, help="override the config's base seed")
    r.add_argument("--threads", type=int, default=default_threads(),
                   help="worker threads (default: env BRDLAB_THREADS or 1)")
    r.set_defaults(func=cmd_run)

    q = sub.add_parser("perturb", help="draw a phi-smooth instance around a skeleton")
    q.add_argument("--in", dest="input", required=True)
    q.add_argument("--phi", type=float, required=True)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--family", choices=FAMILY_KINDS, default="window")
    q.add_argument("--out", required=True)
    q.set_defaults(func=cmd_perturb)

    b = sub.add_parser("brd", help="single run of the dynamics")
    b.add_argument("--in", dest="input", required=True)
    b.add_argument("--epsilon", type=float, required=True)
    b.add_argument("--pivot", choices=[r.value for r in PivotRule], default="first")
    b.add_argument("--start", choices=START_POLICIES, default="lexicographic")
    b.add_argument("--k", type=int, default=8, help="samples for the worst-of-k start")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--json", action="store_true", help="print the full trace as JSON")
    b.set_defaults(func=cmd_brd)

    o = sub.add_parser("oracle", help="brute-force checks on small instances")
    o.add_argument("--in", dest="input", required=True)
    o.add_argument("--alpha", type=float, default=1.0)
    g = o.add_mutually_exclusive_group(required=True)
    g.add_argument("--check", metavar="PROFILE", help="JSON profile (or a file holding one)")
    g.add_argument("--min-potential", action="store_true")
    o.set_defaults(func=cmd_oracle)

    m = sub.add_parser("lemma", help="Monte-Carlo estimate of the truncated reciprocal expectation")
    m.add_argument("--mu", type=int, required=True)
    m.add_argument("--alpha", type=float, required=True)
    m.add_argument("--beta", type=float, required=True)
    m.add_argument("--phi", type=float, required=True)
    m.add_argument("--trials", type=int, default=100_000)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--family", choices=FAMILY_KINDS, default="low")
    m.set_defaults(func=cmd_lemma)

    bd = sub.add_parser("bound", help="closed-form iteration bounds")
    bd.add_argument("--model", choices=MODEL_KINDS, required=True)
    bd.add_argument("--n", type=int, required=True)
    bd.add_argument("--m", type=int, required=True)
    bd.add_argument("--epsilon", type=float, required=True)
    bd.add_argument("--phi", type=float, default=1.0)
    bd.add_argument("--d", type=int, default=None)
    bd.add_argument("--degree", type=int, default=None)
    bd.add_argument("--d-tilde", type=int, default=None)
    bd.set_defaults(func=cmd_bound)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GameValidationError, ConfigError, BudgetExceeded, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
