import json

import numpy as np
import pytest

from brdlab.dynamics import is_alpha_pne
from brdlab.experiment import ConfigError, ExperimentConfig, build_skeleton, choose_start, run_experiment
from brdlab.io import save_instance


def _config(**kw):
    base = dict(model="tabular", phis=(2.0,), epsilons=(0.5,), pivots=("first", "max-gain"), trials=4, seed=5,
                generator={"n": 4, "m": 4})
    base.update(kw)
    return ExperimentConfig.from_dict(base)


def test_report_deterministic():
    a, b = run_experiment(_config()), run_experiment(_config())
    assert a.to_csv() == b.to_csv() and a.to_json() == b.to_json()


def test_threads_do_not_change_report():
    cfg = _config(model="step", generator={"n": 4, "m": 3, "d": 5}, start="random")
    assert run_experiment(cfg, threads=1).to_json() == run_experiment(cfg, threads=4).to_json()


def test_report_contents():
    report = run_experiment(_config())
    assert len(report.cells) == 2
    for cell in report.cells:
        assert len(cell.iterations) == 4
        assert cell.all_converged and cell.cap_ok
        assert cell.ratio <= 1.0
    assert report.ok
    rows = report.to_csv().splitlines()
    assert rows[0].startswith("model,n,m,phi,epsilon,pivot")
    assert len(rows) == 3
    assert json.loads(report.to_json())["ok"] is True


def test_equilibrium_start_takes_no_moves():
    report = run_experiment(_config(trials=1, start="equilibrium", epsilons=(0.1,)))
    assert all(c.mean == 0 for c in report.cells)


def test_network_generator():
    cfg = _config(model="cost_sharing", generator={"n": 3, "network": True, "max_nodes": 5}, start="worst-of-k")
    report = run_experiment(cfg)
    assert report.ok


def test_skeleton_file(tmp_path, g1):
    path = tmp_path / "g1.json"
    save_instance(g1, path)
    cfg = ExperimentConfig.from_dict({"model": "tabular", "phis": [1.0], "epsilons": [0.2], "skeleton": str(path)})
    assert build_skeleton(cfg) == g1
    with pytest.raises(ConfigError, match="does not match"):
        build_skeleton(ExperimentConfig.from_dict({"model": "step", "phis": [1.0], "epsilons": [0.2],
                                                   "skeleton": str(path)}))


@pytest.mark.parametrize("patch", [
    {"phis": [0.5]}, {"epsilons": [0]}, {"pivots": ["sideways"]}, {"trials": 0}, {"start": "middle"},
    {"family": "beta"}, {"model": "linear"}, {"generator": None}, {"colour": "red"}, {"generator": {"n": 2}},
])
def test_config_errors(patch):
    base = dict(model="tabular", phis=[2.0], epsilons=[0.5], generator={"n": 2, "m": 2})
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({**base, **patch})


def test_choose_start_policies(g1):
    rng = np.random.default_rng(0)
    assert choose_start(g1, "lexicographic", rng) == ((0,), (0,))
    assert is_alpha_pne(g1, choose_start(g1, "equilibrium", rng), 1.0)
    worst = choose_start(g1, "worst-of-k", rng, 16)
    assert worst in {((0,), (0,)), ((1,), (1,))}
