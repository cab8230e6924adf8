"""Seeded batch experiments: perturb, run the dynamics, compare with the bounds.

Every (cell, trial) pair derives its own seeds from ``(base seed, cell,
trial)``, so results do not depend on how trials are scheduled over workers.
Reports contain no timing data; wall-clock numbers go to a separate file so
the reports stay byte-identical across runs.
"""
from __future__ import annotations

import csv
import io as _io
import itertools
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .dynamics import BrdConfig, PivotRule, Status, run_brd
from .game import Game, potential
from .generators import random_explicit_game, random_network_game
from .io import load_instance
from .lemma import MODEL_KINDS, bound_query_for, iteration_bound
from .smoothing import FAMILY_KINDS, PerturbationSpec, perturb

START_POLICIES = ("lexicographic", "random", "worst-of-k", "equilibrium")
_SKELETON_STREAM = 0x5EED


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment grid.

    The skeleton comes from ``skeleton`` (an instance file) or from
    ``generator``, a dict with ``n`` and ``m`` plus optional
    ``strategies_per_player``, ``max_strategy_size``, ``d``, ``degree``, and
    ``network`` (true for a random network with ``max_nodes``/``max_edges``).
    """

    model: str
    phis: tuple[float, ...]
    epsilons: tuple[float, ...]
    pivots: tuple[str, ...] = ("first",)
    trials: int = 10
    seed: int = 0
    start: str = "lexicographic"
    k: int = 8
    family: str = "window"
    skeleton: str | None = None
    generator: dict | None = None

    def __post_init__(self):
        if self.model not in MODEL_KINDS:
            raise ConfigError(f"model: unknown kind {self.model!r}")
        if (self.skeleton is None) == (self.generator is None):
            raise ConfigError("give exactly one of skeleton or generator")
        for name in ("phis", "epsilons", "pivots"):
            if len(getattr(self, name)) == 0:
                raise ConfigError(f"{name}: must be nonempty")
        if any(p < 1 for p in self.phis):
            raise ConfigError("phis: every phi must be >= 1")
        if any(not e > 0 for e in self.epsilons):
            raise ConfigError("epsilons: every epsilon must be > 0")
        for p in self.pivots:
            try:
                PivotRule(p)
            except ValueError:
                raise ConfigError(f"pivots: unknown rule {p!r}") from None
        if self.trials < 1:
            raise ConfigError("trials: must be >= 1")
        if self.start not in START_POLICIES:
            raise ConfigError(f"start: unknown policy {self.start!r}")
        if self.k < 1:
            raise ConfigError("k: must be >= 1")
        if self.family not in FAMILY_KINDS:
            raise ConfigError(f"family: unknown family {self.family!r}")
        if self.seed < 0:
            raise ConfigError("seed: must be nonnegative")
        if self.generator is not None:
            for key in ("n", "m"):
                if key not in self.generator and not (key == "m" and self.generator.get("network")):
                    raise ConfigError(f"generator: missing {key!r}")

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        known = set(cls.__dataclass_fields__)
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        doc = dict(doc)
        for key in ("phis", "epsilons", "pivots"):
            if key in doc:
                doc[key] = tuple(doc[key])
        try:
            return cls(**doc)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        try:
            doc = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
        return cls.from_dict(doc)

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("phis", "epsilons", "pivots"):
            d[key] = list(d[key])
        return d


@dataclass
class CellResult:
    model: str
    n: int
    m: int
    phi: float
    epsilon: float
    pivot: str
    iterations: list[int]
    caps: list[float]
    converged: list[bool]
    smoothed_bound: float
    seconds: list[float] = field(default_factory=list, repr=False)

    @property
    def mean(self) -> float:
        return float(np.mean(self.iterations))

    @property
    def std(self) -> float:
        return float(np.std(self.iterations, ddof=1)) if len(self.iterations) > 1 else 0.0

    @property
    def max(self) -> int:
        return int(max(self.iterations))

    @property
    def cap_ok(self) -> bool:
        return all(t <= c for t, c in zip(self.iterations, self.caps))

    @property
    def all_converged(self) -> bool:
        return all(self.converged)

    @property
    def ratio(self) -> float:
        return self.mean / self.smoothed_bound

    @property
    def ok(self) -> bool:
        return self.cap_ok and self.all_converged and math.isfinite(self.ratio) and self.ratio <= 1.0


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    cells: list[CellResult]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cells)

    def to_csv(self) -> str:
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["model", "n", "m", "phi", "epsilon", "pivot", "trials", "mean_T", "std_T", "max_T",
                    "cap_ok", "converged", "smoothed_bound", "ratio"])
        for c in self.cells:
            w.writerow([c.model, c.n, c.m, repr(c.phi), repr(c.epsilon), c.pivot, len(c.iterations),
                        repr(c.mean), repr(c.std), c.max, c.cap_ok, c.all_converged,
                        repr(c.smoothed_bound), repr(c.ratio)])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "config": self.config.to_dict(),
            "cells": [{
                "model": c.model, "n": c.n, "m": c.m, "phi": c.phi, "epsilon": c.epsilon,
                "pivot": c.pivot, "iterations": c.iterations, "caps": c.caps,
                "converged": c.converged, "mean_T": c.mean, "std_T": c.std, "max_T": c.max,
                "cap_ok": c.cap_ok, "smoothed_bound": c.smoothed_bound, "ratio": c.ratio,
            } for c in self.cells],
            "ok": self.ok,
        }
        return json.dumps(doc, indent=1, sort_keys=True) + "\n"

    def timings_json(self) -> str:
        doc = [{"phi": c.phi, "epsilon": c.epsilon, "pivot": c.pivot,
                "total_seconds": float(sum(c.seconds)), "max_seconds": float(max(c.seconds)),
                "mean_seconds": float(np.mean(c.seconds))} for c in self.cells]
        return json.dumps(doc, indent=1) + "\n"

    def write(self, out_dir) -> None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.csv").write_text(self.to_csv())
        (out / "report.json").write_text(self.to_json())
        (out / "timings.json").write_text(self.timings_json())


def derive_seed(*words: int) -> int:
    return int(np.random.SeedSequence(list(words)).generate_state(1, np.uint64)[0])


def build_skeleton(config: ExperimentConfig) -> Game:
    if config.skeleton is not None:
        game = load_instance(config.skeleton)
        if game.costs.kind != config.model:
            raise ConfigError(f"skeleton model {game.costs.kind!r} does not match config model {config.model!r}")
        return game
    g = dict(config.generator)
    rng = np.random.default_rng(derive_seed(config.seed, _SKELETON_STREAM))
    cost_kw = {k: g.pop(k) for k in ("d", "degree") if k in g}
    n = g.pop("n")
    if g.pop("network", False):
        g.pop("m", None)
        return random_network_game(config.model, n, rng, **g, **cost_kw)
    m = g.pop("m")
    spp = g.pop("strategies_per_player", (1, 4))
    if isinstance(spp, list):
        spp = tuple(spp)
    return random_explicit_game(config.model, n, m, rng, strategies_per_player=spp, **g, **cost_kw)


def _random_profile(game: Game, rng: np.random.Generator):
    if not game.is_network:
        return tuple(S[rng.integers(len(S))] for S in game.strategies)
    # Uniform sampling over paths is out of reach; use shortest paths
    # under random edge weights instead.
    from .network import shortest_path
    out = []
    for o, d in game.network.od_pairs:
        out.append(shortest_path(game.network, o, d, rng.random(game.m) + 1e-3)[0])
    return tuple(out)


def choose_start(game: Game, policy: str, rng: np.random.Generator, k: int = 8):
    """Start profile per policy.

    ``worst-of-k`` samples ``k`` random profiles and keeps the one with the
    largest potential, a cheap stand-in for an adversarial start.
    ``equilibrium`` starts from an exact PNE (0 moves expected).
    """
    if policy == "lexicographic":
        if game.is_network:
            from .network import first_simple_path
            return tuple(first_simple_path(game.network, o, d) for o, d in game.network.od_pairs)
        return tuple(S[0] for S in game.strategies)
    if policy == "random":
        return _random_profile(game, rng)
    if policy == "worst-of-k":
        candidates = [_random_profile(game, rng) for _ in range(k)]
        values = [potential(game, p) for p in candidates]
        return candidates[int(np.argmax(values))]
    if policy == "equilibrium":
        start = choose_start(game, "lexicographic", rng)
        # tiny epsilon; exact alpha = 1 would not pass BrdConfig validation
        trace = run_brd(game, start, BrdConfig(epsilon=1e-300, max_iterations=10**7))
        return trace.final_profile
    raise ConfigError(f"unknown start policy {policy!r}")


def _trial(skeleton, config, cell_index, trial, phi, eps, pivot):
    seed = derive_seed(config.seed, cell_index, trial)
    game = perturb(skeleton, PerturbationSpec(phi, config.family, seed))
    rng = np.random.default_rng(derive_seed(config.seed, cell_index, trial, 1))
    start = choose_start(game, config.start, rng, config.k)
    t0 = time.perf_counter()
    trace = run_brd(game, start, BrdConfig(eps, PivotRule(pivot), seed=derive_seed(config.seed, cell_index, trial, 2)))
    return trace.iterations, trace.cap, trace.status is Status.CONVERGED, time.perf_counter() - t0


def default_threads() -> int:
    return int(os.environ.get("BRDLAB_THREADS", "1"))


def run_experiment(config: ExperimentConfig, threads: int | None = None) -> ExperimentReport:
    skeleton = build_skeleton(config)
    threads = default_threads() if threads is None else threads
    cells = list(itertools.product(config.phis, config.epsilons, config.pivots))
    tasks = [(c, t, phi, eps, piv) for c, (phi, eps, piv) in enumerate(cells) for t in range(config.trials)]

    def work(task):
        return _trial(skeleton, config, *task)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, tasks))
    else:
        results = [work(task) for task in tasks]

    out = []
    for c, (phi, eps, piv) in enumerate(cells):
        rows = results[c * config.trials:(c + 1) * config.trials]
        bound = iteration_bound(bound_query_for(skeleton, eps, phi))[1]
        out.append(CellResult(config.model, skeleton.n, skeleton.m, float(phi), float(eps), piv,
                              [r[0] for r in rows], [float(r[1]) for r in rows], [r[2] for r in rows],
                              bound, [r[3] for r in rows]))
    return ExperimentReport(config, out)
