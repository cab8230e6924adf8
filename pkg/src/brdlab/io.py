"""JSON instance files.

Layout (version 1)::

    {
      "version": 1,
      "model": "tabular" | "step" | "polynomial" | "cost_sharing",
      "n": 2, "m": 2,
      "cost_params": {...},              # model specific, see below
      "strategies": [[[0], [1]], ...]    # explicit games, or
      "network": {"nodes": 2, "edges": [[0, 1], [0, 1]], "od_pairs": [[0, 1], [0, 1]]}
    }

``cost_params`` holds ``table`` (tabular), ``breaks`` and ``jumps`` (step),
``degree`` and ``coefficients`` (polynomial) or ``fixed_costs`` (cost
sharing).  Floats are written in shortest round-trip form, so a save/load
cycle reproduces every value bit for bit.
"""
from __future__ import annotations

import json
from pathlib import Path

from .costs import CostSharingCosts, PolynomialCosts, StepFunctionCosts, TabularCosts
from .game import Game, GameValidationError, validate_game
from .network import NetworkSpec

FORMAT_VERSION = 1


class InstanceFormatError(GameValidationError):
    pass


def game_to_dict(game: Game) -> dict:
    c = game.costs
    if c.kind == "tabular":
        params = {"table": [list(row) for row in c.values]}
    elif c.kind == "step":
        params = {"breaks": [list(b) for b in c.breaks], "jumps": [list(j) for j in c.jumps]}
    elif c.kind == "polynomial":
        params = {"degree": c.degree, "coefficients": [list(row) for row in c.coefficients]}
    else:
        params = {"fixed_costs": list(c.fixed_costs)}
    doc = {"version": FORMAT_VERSION, "model": c.kind, "n": game.n, "m": game.m, "cost_params": params}
    if game.is_network:
        net = game.network
        doc["network"] = {"nodes": net.num_nodes, "edges": [list(e) for e in net.edges],
                          "od_pairs": [list(p) for p in net.od_pairs]}
    else:
        doc["strategies"] = [[list(s) for s in S] for S in game.strategies]
    return doc


def dumps(game: Game) -> str:
    return json.dumps(game_to_dict(game), indent=1) + "\n"


def save_instance(game: Game, path) -> None:
    Path(path).write_text(dumps(game))


def _get(doc, key, kind, where):
    if not isinstance(doc, dict) or key not in doc:
        raise InstanceFormatError(f"{where}: missing field {key!r}")
    value = doc[key]
    if kind is float:
        ok = isinstance(value, (int, float)) and not isinstance(value, bool)
    elif kind is int:
        ok = isinstance(value, int) and not isinstance(value, bool)
    else:
        ok = isinstance(value, kind)
    if not ok:
        raise InstanceFormatError(f"{where}.{key}: expected {getattr(kind, '__name__', kind)}")
    return value


def _matrix(value, kind, where):
    if not isinstance(value, list):
        raise InstanceFormatError(f"{where}: expected a list of lists")
    for r, row in enumerate(value):
        if not isinstance(row, list):
            raise InstanceFormatError(f"{where}[{r}]: expected a list")
        for j, x in enumerate(row):
            bad = isinstance(x, bool) or not isinstance(x, (int, float) if kind is float else int)
            if bad:
                raise InstanceFormatError(f"{where}[{r}][{j}]: expected {kind.__name__}, got {x!r}")
    return value


def game_from_dict(doc: dict) -> Game:
    """Build and validate a game; raises ``InstanceFormatError`` with a field path."""
    version = _get(doc, "version", int, "instance")
    if version != FORMAT_VERSION:
        raise InstanceFormatError(f"instance.version: unsupported version {version} (expected {FORMAT_VERSION})")
    model = _get(doc, "model", str, "instance")
    n = _get(doc, "n", int, "instance")
    m = _get(doc, "m", int, "instance")
    params = _get(doc, "cost_params", dict, "instance")
    where = "instance.cost_params"
    if model == "tabular":
        costs = TabularCosts(_matrix(_get(params, "table", list, where), float, where + ".table"))
    elif model == "step":
        costs = StepFunctionCosts(_matrix(_get(params, "breaks", list, where), int, where + ".breaks"),
                                  _matrix(_get(params, "jumps", list, where), float, where + ".jumps"))
    elif model == "polynomial":
        costs = PolynomialCosts(_matrix(_get(params, "coefficients", list, where), float, where + ".coefficients"),
                                _get(params, "degree", int, where))
    elif model == "cost_sharing":
        fixed = _get(params, "fixed_costs", list, where)
        _matrix([fixed], float, where + ".fixed_costs")
        costs = CostSharingCosts(fixed)
    else:
        raise InstanceFormatError(f"instance.model: unknown model kind {model!r}")
    if costs.m != m:
        raise InstanceFormatError(f"instance.m: declared {m} resources, cost_params describe {costs.m}")
    if n < 1:
        raise InstanceFormatError("instance.n: need at least one player")
    if "network" in doc:
        net = _get(doc, "network", dict, "instance")
        nodes = _get(net, "nodes", int, "instance.network")
        edges = _matrix(_get(net, "edges", list, "instance.network"), int, "instance.network.edges")
        pairs = _matrix(_get(net, "od_pairs", list, "instance.network"), int, "instance.network.od_pairs")
        for label, rows in (("edges", edges), ("od_pairs", pairs)):
            for j, row in enumerate(rows):
                if len(row) != 2:
                    raise InstanceFormatError(f"instance.network.{label}[{j}]: expected a pair")
        game = Game(n, costs, network=NetworkSpec(nodes, tuple(map(tuple, edges)), tuple(map(tuple, pairs))))
    else:
        raw = _get(doc, "strategies", list, "instance")
        for i, S in enumerate(raw):
            _matrix(S, int, f"instance.strategies[{i}]")
        game = Game(n, costs, strategies=tuple(tuple(tuple(s) for s in S) for S in raw))
    problems = validate_game(game)
    if problems:
        raise InstanceFormatError("invalid instance: " + "; ".join(problems))
    return game


def loads(text: str) -> Game:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return game_from_dict(doc)


def load_instance(path) -> Game:
    return loads(Path(path).read_text())


def parse_profile(text: str) -> tuple[tuple[int, ...], ...]:
    """Profile from JSON text or a file path: one list of resource/edge ids per player."""
    p = Path(text)
    if not text.lstrip().startswith("[") and p.exists():
        text = p.read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"profile: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    _matrix(doc, int, "profile")
    return tuple(tuple(s) for s in doc)
