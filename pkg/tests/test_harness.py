from __future__ import annotations

import json

import pytest

from cyclespan.cli import cli_main
from cyclespan.graphs import from_edge_list_text
from cyclespan.harness import (
    ConfigError,
    ExperimentResult,
    parse_config,
    run_experiment,
    summarize,
    write_output,
)


def cfg_text(**overrides) -> str:
    base = {
        "kind": "poisson_fit",
        "model": {"name": "configuration", "n": 200, "d": 3},
        "ell_range": [3],
        "trials": 5,
        "master_seed": 1,
    }
    base.update(overrides)
    return json.dumps(base)


def test_parse_minimal_config():
    cfg = parse_config(cfg_text())
    assert cfg.kind == "poisson_fit"
    assert cfg.trials == 5
    assert cfg.threads == 1
    assert cfg.tolerance is None


def test_parse_errors_name_the_field():
    with pytest.raises(ConfigError, match="'kind'"):
        parse_config(cfg_text(kind="bogus"))
    with pytest.raises(ConfigError, match="'trials'"):
        parse_config(cfg_text(trials=0))
    with pytest.raises(ConfigError, match="'model.d'"):
        parse_config(cfg_text(model={"name": "configuration", "n": 200, "d": 2}))
    with pytest.raises(ConfigError, match="'master_seed'"):
        parse_config(cfg_text(master_seed=-1))
    with pytest.raises(ConfigError, match="'frobnicate'"):
        parse_config(cfg_text(frobnicate=1))
    with pytest.raises(ConfigError, match="not valid JSON"):
        parse_config("{")


def test_parse_directed_length_constraint_cited():
    text = json.dumps({
        "kind": "staged_success",
        "model": {"name": "ham_binomial", "n": 100, "c": 1.0, "delta": 0.25,
                  "orientation": "directed"},
        "ell_range": [97],
        "trials": 1,
        "master_seed": 0,
    })
    with pytest.raises(ConfigError, match=r"4 <= ell <= n-4"):
        parse_config(text)


def test_parse_n_placeholder():
    text = json.dumps({
        "kind": "interval_probability",
        "model": {"name": "cycle", "n": 12},
        "ell_range": [3, "n"],
        "trials": 2,
        "master_seed": 0,
    })
    cfg = parse_config(text)
    assert cfg.ell_range == [3, 12]


def test_parse_threads_env_default(monkeypatch):
    monkeypatch.setenv("CYCLESPAN_THREADS", "6")
    assert parse_config(cfg_text()).threads == 6
    monkeypatch.delenv("CYCLESPAN_THREADS")
    assert parse_config(cfg_text()).threads == 1


def test_poisson_fit_cells():
    res = run_experiment(parse_config(cfg_text(trials=40, ell_range=[3, 4])))
    kinds = [c.kind for c in res.cells]
    assert kinds == ["poisson_fit", "poisson_fit_variance"] * 2
    assert res.total_cycles >= 0
    for c in res.cells:
        assert c.trials == 40
        assert c.stderr >= 0.0


def test_interval_trivial_cycle_model():
    text = json.dumps({
        "kind": "interval_probability",
        "model": {"name": "cycle", "n": 9},
        "ell_range": ["n", "n"],
        "trials": 4,
        "master_seed": 3,
    })
    res = run_experiment(parse_config(text))
    (cell,) = res.cells
    assert cell.estimate == 1.0
    assert cell.reference == 1.0
    assert cell.passed == "True"
    assert cell.k_or_ell == "9-9"
    assert res.undecided_trials == 0


def test_per_length_probability_estimates_are_probabilities():
    text = json.dumps({
        "kind": "per_length_probability",
        "model": {"name": "regular", "n": 30, "d": 3},
        "ell_range": [3, 4, 5],
        "trials": 30,
        "master_seed": 5,
    })
    res = run_experiment(parse_config(text))
    for c in res.cells:
        assert 0.0 <= c.estimate <= 1.0
        assert 0.0 <= c.reference <= 1.0


def test_lemma_check_row_labels():
    text = json.dumps({
        "kind": "lemma_check",
        "model": {"name": "ham_matching", "n": 400},
        "ell_range": [8],
        "trials": 10,
        "master_seed": 2,
    })
    res = run_experiment(parse_config(text))
    labels = [c.k_or_ell for c in res.cells]
    assert labels == ["8:aux_min", "8:y0_min", "8:joint"]
    for c in res.cells:
        assert c.reference == 0.99


def test_staged_success_one_sided():
    text = json.dumps({
        "kind": "staged_success",
        "model": {"name": "ham_binomial", "n": 400, "c": 1.0, "delta": 0.3},
        "ell_range": [30],
        "trials": 10,
        "master_seed": 6,
    })
    res = run_experiment(parse_config(text))
    (cell,) = res.cells
    assert cell.param == repr(0.3)
    assert 0.0 <= cell.estimate <= 1.0
    assert res.aborted_trials == 0


def test_switching_suite_clean():
    text = json.dumps({
        "kind": "switching_suite",
        "model": {"name": "switching", "n": 12},
        "ell_range": [],
        "trials": 1,
        "master_seed": 0,
    })
    res = run_experiment(parse_config(text))
    assert len(res.cells) == 8  # 4 checks x 2 orientations
    assert all(c.passed == "True" for c in res.cells)
    assert all(c.estimate == 0.0 for c in res.cells)


def test_csv_shape_and_header(tmp_path):
    res = run_experiment(parse_config(cfg_text(trials=6)))
    out = tmp_path / "r.csv"
    write_output(res, "csv", str(out))
    lines = out.read_text().splitlines()
    assert lines[0] == "kind,model,n,param,k_or_ell,trials,estimate,stderr,reference,pass"
    assert len(lines) == len(res.cells) + 1
    assert all("," in ln for ln in lines)


def test_json_round_trip(tmp_path):
    res = run_experiment(parse_config(cfg_text(trials=6)))
    out = tmp_path / "r.json"
    write_output(res, "json", str(out))
    data = json.loads(out.read_text())
    assert data["config"]["kind"] == "poisson_fit"
    assert len(data["cells"]) == len(res.cells)
    assert data["cells"][0]["estimate"] == res.cells[0].estimate
    # reload the embedded config and re-run: byte-identical outputs
    cfg2 = parse_config(json.dumps(data["config"]))
    res2 = run_experiment(cfg2)
    out2 = tmp_path / "r2.json"
    write_output(res2, "json", str(out2))
    assert out.read_bytes() == out2.read_bytes()


def test_thread_count_does_not_change_bytes(tmp_path):
    text = json.dumps({
        "kind": "per_length_probability",
        "model": {"name": "regular", "n": 40, "d": 3},
        "ell_range": [3, 4],
        "trials": 24,
        "master_seed": 9,
    })
    paths = []
    for threads in (1, 4):
        cfg = parse_config(text)
        object.__setattr__(cfg, "threads", threads)
        res = run_experiment(cfg)
        p = tmp_path / f"t{threads}.csv"
        write_output(res, "csv", str(p))
        paths.append(p)
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_summarize_empty_and_full():
    cfg = parse_config(cfg_text())
    empty = ExperimentResult(cfg, [], 0, 0, 0)
    text = summarize(empty)
    assert "kind" in text.splitlines()[0]
    assert len(text.splitlines()) == 3  # header, rule, totals
    res = run_experiment(parse_config(cfg_text(trials=4)))
    assert len(summarize(res).splitlines()) == 3 + len(res.cells)


def test_write_output_rejects_unknown_format(tmp_path):
    res = run_experiment(parse_config(cfg_text(trials=2)))
    with pytest.raises(ValueError):
        write_output(res, "yaml", str(tmp_path / "x"))


def test_cli_theta_json(capsys):
    assert cli_main(["theta", "--c", "2", "--ell", "3", "--tol", "1e-12"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert set(out) == {"value", "K", "tail"}
    assert abs(out["value"] - 0.6077726394545039) < 1e-10


def test_cli_theta_rejects_subcritical(capsys):
    assert cli_main(["theta", "--c", "0.9", "--ell", "3"]) == 1
    assert "error" in capsys.readouterr().err


def test_cli_switch_json(capsys):
    assert cli_main(["switch", "--n", "16", "--ell", "5", "--chord", "0", "4"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["eligible"] is True
    assert out["partner_count"] == 1
    assert len(out["cycles"]["short"]) == 1
    assert len(out["cycles"]["short"][0]) == 5


def test_cli_sample_and_spectrum_pipeline(tmp_path, capsys):
    g_path = tmp_path / "g.txt"
    assert cli_main([
        "sample", "--model", "regular", "--n", "20", "--d", "3",
        "--seed", "4", "--out", str(g_path),
    ]) == 0
    g = from_edge_list_text(g_path.read_text())
    assert g.n == 20
    assert cli_main(["spectrum", "--input", str(g_path)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["exhaustive"] is True
    assert out["lengths"] == sorted(int(k) for k in out["counts"])


def test_cli_sample_is_deterministic(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for p in (a, b):
        cli_main(["sample", "--model", "binomial", "--n", "30", "--c", "2.0",
                  "--seed", "12", "--out", str(p)])
    assert a.read_bytes() == b.read_bytes()


def test_cli_experiment_exit_codes(tmp_path, capsys):
    assert cli_main(["experiment", "--config", str(tmp_path / "nope.json")]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text(cfg_text(kind="bogus"))
    assert cli_main(["experiment", "--config", str(bad)]) == 1
    err = capsys.readouterr().err
    assert "kind" in err
    good = tmp_path / "good.json"
    good.write_text(cfg_text(trials=3))
    assert cli_main(["experiment", "--config", str(good)]) == 0


def test_cli_usage_error_maps_to_one(capsys):
    assert cli_main(["spectrum"]) == 1  # missing required --input
    capsys.readouterr()


def test_cli_verify_spectrum_oracle(capsys):
    assert cli_main(["verify", "--suite", "spectrum-oracle"]) == 0
    assert "7/7" in capsys.readouterr().out
