import json

import pytest

from brdlab.cli import main
from brdlab.io import load_instance, save_instance


@pytest.fixture
def g1_file(tmp_path, g1):
    path = tmp_path / "g1.json"
    save_instance(g1, path)
    return path


def _run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bound(capsys):
    code, out, _ = _run(capsys, "bound", "--model", "tabular", "--n", 2, "--m", 2, "--epsilon", 1)
    doc = json.loads(out)
    assert code == 0 and doc["exhaustive_cap"] == 9
    assert doc["smoothed_expectation_bound"] == pytest.approx(134.0842586675095)


def test_bound_invalid(capsys):
    code, _, err = _run(capsys, "bound", "--model", "cost_sharing", "--n", 2, "--m", 1, "--epsilon", 1)
    assert code == 2 and "mu" in err


def test_lemma(capsys):
    code, out, _ = _run(capsys, "lemma", "--mu", 4, "--alpha", 1, "--beta", 1, "--phi", 2, "--trials", 20000)
    assert code == 0 and json.loads(out)["holds"]


def test_brd(capsys, g1_file):
    code, out, _ = _run(capsys, "brd", "--in", g1_file, "--epsilon", 0.2)
    assert code == 0
    assert "converged" in out and "p1:{r2}" in out
    code, out, _ = _run(capsys, "brd", "--in", g1_file, "--epsilon", 0.2, "--pivot", "max-gain", "--json")
    doc = json.loads(out)
    assert doc["iterations"] == 1 and doc["final_profile"] == [[1], [0]]


def test_oracle(capsys, g1_file):
    code, out, _ = _run(capsys, "oracle", "--in", g1_file, "--check", "[[0],[0]]", "--alpha", 1.7)
    assert code == 0 and json.loads(out)["is_alpha_pne"] is True
    code, out, _ = _run(capsys, "oracle", "--in", g1_file, "--min-potential")
    assert json.loads(out) == {"profile": [[0], [1]], "potential": pytest.approx(0.5)}


def test_perturb(capsys, tmp_path, g1_file):
    out_path = tmp_path / "p.json"
    code, _, _ = _run(capsys, "perturb", "--in", g1_file, "--phi", 5, "--seed", 2, "--out", out_path)
    assert code == 0
    game = load_instance(out_path)
    assert game.strategies == load_instance(g1_file).strategies


def test_invalid_instance(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"version": 1, "model": "step", "n": 1, "m": 1, '
                   '"cost_params": {"breaks": [[2]], "jumps": [[0.5]]}, "strategies": [[[0]]]}')
    code, _, err = _run(capsys, "brd", "--in", bad, "--epsilon", 0.1)
    assert code == 2 and "b_r1 = 1" in err
    code, _, err = _run(capsys, "brd", "--in", tmp_path / "missing.json", "--epsilon", 0.1)
    assert code == 2


def test_run_byte_identical(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"model": "polynomial", "phis": [1, 4], "epsilons": [0.2], "trials": 3,
                               "pivots": ["first", "random"], "generator": {"n": 3, "m": 3, "degree": 2}}))
    outs = []
    for threads in (1, 3):
        out = tmp_path / f"out{threads}"
        code, _, _ = _run(capsys, "run", "--config", cfg, "--out", out, "--threads", threads)
        assert code == 0
        outs.append(((out / "report.csv").read_bytes(), (out / "report.json").read_bytes()))
        assert (out / "timings.json").exists()
    assert outs[0] == outs[1]


def test_run_bad_config(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"model": "tabular",')
    code, _, err = _run(capsys, "run", "--config", cfg, "--out", tmp_path / "o")
    assert code == 2 and "line" in err
