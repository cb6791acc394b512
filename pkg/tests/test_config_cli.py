import csv
import json
from pathlib import Path

import numpy as np
import pytest

from wavekin import PRESETS, ConfigError, CosineBump, Indicator, Method, parse_config
from wavekin.cli import main
from wavekin.config import RunConfig

SMALL_CONFIG = """\
model.h = 0.25
model.alpha = 0.1 0.1 0.1
model.beta = 0.1 0.1 0.1
model.delta = 0.4
model.n_cells = 40
sim.dt = 0.005
sim.t_final = 0.05
sim.record_every = 2
sim.snapshot_times = 0.0 0.05
init.kind = cosine_bump
init.l = 5.0
diagnostics.ml_pairs = 1:0.1
output.dir = out
"""


def test_parse_test1_preset():
    cfg = parse_config(PRESETS["test1"])
    assert cfg.model.h == 0.1
    assert cfg.model.n_cells == 500
    assert cfg.model.alpha == (0.1, 0.1, 0.1)
    assert cfg.model.beta == (0.1, 0.1, 0.1)
    assert cfg.model.delta == 0.4
    assert cfg.sim.dt == 0.001
    assert cfg.sim.method is Method.EULER
    assert isinstance(cfg.init, CosineBump)
    assert cfg.init.half_period == 5.0
    assert cfg.sim.ml_pairs == ((1.0, 0.1), (1.0, 1.0))


def test_parse_test2_preset():
    cfg = parse_config(PRESETS["test2"])
    assert isinstance(cfg.init, Indicator)
    assert (cfg.init.a, cfg.init.b) == (3.0, 5.0)


def test_config_round_trip():
    for text in (PRESETS["test1"], PRESETS["test2"], SMALL_CONFIG):
        cfg = parse_config(text)
        assert parse_config(cfg.to_text()) == cfg


def test_empty_config_lists_required_keys():
    with pytest.raises(ConfigError, match="model.h") as err:
        parse_config("")
    for key in ("model.alpha", "sim.dt", "init.kind"):
        assert key in str(err.value)


def test_unknown_key_named():
    with pytest.raises(ConfigError, match="model.gamma"):
        parse_config(SMALL_CONFIG + "model.gamma = 1\n")


def test_duplicate_key_rejected():
    with pytest.raises(ConfigError, match="duplicate key 'model.h'"):
        parse_config(SMALL_CONFIG + "model.h = 0.3\n")


def test_syntax_error_carries_line_number():
    bad = SMALL_CONFIG.replace("sim.dt = 0.005", "sim.dt 0.005")
    with pytest.raises(ConfigError, match="line 6"):
        parse_config(bad)


def test_semantic_error_cites_constraint():
    bad = SMALL_CONFIG.replace("model.delta = 0.4", "model.delta = 0.1")
    with pytest.raises(ConfigError, match="max_n"):
        parse_config(bad)


def test_init_key_must_match_kind():
    bad = SMALL_CONFIG.replace("init.l = 5.0", "init.a = 1.0")
    with pytest.raises(ConfigError, match="init.a"):
        parse_config(bad)


def test_point_mass_config():
    text = SMALL_CONFIG.replace(
        "init.kind = cosine_bump\ninit.l = 5.0", "init.kind = point_masses\ninit.masses = 3:1.0 7:0.5"
    )
    cfg = parse_config(text)
    assert cfg.init.masses == ((3, 1.0), (7, 0.5))
    assert parse_config(cfg.to_text()) == cfg


def _read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_cli_simulate_outputs(tmp_path):
    cfg_path = tmp_path / "run.cfg"
    cfg_path.write_text(SMALL_CONFIG)
    out = tmp_path / "o1"
    assert main(["simulate", "--config", str(cfg_path), "--out", str(out)]) == 0
    rows = _read_csv(out / "timeseries.csv")
    assert rows[0] == ["t", "m1", "m2", "m3", "m4", "ml_a1_l0.1", "l1_norm", "min_f"]
    assert len(rows) == 1 + (1 + 10 // 2)
    snap = _read_csv(out / "snapshot_0.csv")
    assert snap[0] == ["i", "x", "f"]
    assert len(snap) == 41
    assert (out / "snapshot_0.05.csv").exists()


def test_cli_simulate_t_final_zero(tmp_path):
    cfg_path = tmp_path / "run.cfg"
    cfg_path.write_text(
        SMALL_CONFIG.replace("sim.t_final = 0.05", "sim.t_final = 0.0").replace(
            "sim.snapshot_times = 0.0 0.05", "sim.snapshot_times = 0.0"
        )
    )
    out = tmp_path / "o"
    assert main(["simulate", "--config", str(cfg_path), "--out", str(out)]) == 0
    assert len(_read_csv(out / "timeseries.csv")) == 2  # header + t=0 row


def test_cli_outputs_bitwise_deterministic(tmp_path):
    cfg_path = tmp_path / "run.cfg"
    cfg_path.write_text(SMALL_CONFIG)
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    main(["simulate", "--config", str(cfg_path), "--out", str(out_a)])
    main(["simulate", "--config", str(cfg_path), "--out", str(out_b)])
    for name in ("timeseries.csv", "snapshot_0.csv", "snapshot_0.05.csv"):
        assert (out_a / name).read_bytes() == (out_b / name).read_bytes()


def test_cli_config_error_exit_code(tmp_path):
    cfg_path = tmp_path / "run.cfg"
    cfg_path.write_text("model.h = 0.1\n")
    assert main(["simulate", "--config", str(cfg_path)]) == 2
    assert main(["simulate", "--config", str(tmp_path / "missing.cfg")]) == 2


def test_cli_bounds(tmp_path, capsys):
    cfg_path = tmp_path / "run.cfg"
    cfg_path.write_text(SMALL_CONFIG)
    out = tmp_path / "b"
    assert main(["bounds", "--config", str(cfg_path), "--out", str(out)]) == 0
    rows = _read_csv(out / "bounds.csv")
    assert rows[0] == ["name", "k", "value"]
    names = {r[0] for r in rows[1:]}
    assert {"m1_0", "decay_rate_h_delta", "young_C", "C_k", "B_k(m1_0)"} <= names
    text = (out / "bounds.txt").read_text()
    assert "C_k[k=2]" in text
    assert capsys.readouterr().out.strip()


def test_cli_verify_small(tmp_path, capsys):
    cfg_path = tmp_path / "run.cfg"
    cfg_path.write_text(
        SMALL_CONFIG.replace("model.n_cells = 40", "model.n_cells = 64")
    )
    out = tmp_path / "v"
    code = main(["verify", "--config", str(cfg_path), "--out", str(out), "--seed", "3"])
    assert code == 0
    rows = _read_csv(out / "report.csv")
    assert rows[0] == ["check", "status", "margin", "tolerance", "seconds"]
    assert len(rows) > 10
    statuses = {r[1] for r in rows[1:]}
    assert statuses <= {"pass", "skip"}
    assert "energy_decay" in capsys.readouterr().out


def test_cli_repro_small_manifest(tmp_path, monkeypatch):
    # drive the repro pipeline through a reduced preset so it stays fast
    small = SMALL_CONFIG.replace(
        "sim.snapshot_times = 0.0 0.05", "sim.snapshot_times = 0.0 0.02 0.05"
    ).replace("diagnostics.ml_pairs = 1:0.1", "diagnostics.ml_pairs = 1:0.1 1:1.0")
    import wavekin.cli as cli

    monkeypatch.setitem(cli.PRESETS, "test1", small)
    out = tmp_path / "r"
    assert main(["repro", "test1", "--out", str(out)]) == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["preset"] == "test1"
    ids = [f["id"] for f in manifest["figures"]]
    assert ids == [
        "initial_data",
        "solution_t0.02",
        "solution_t0.05",
        "moments_m1_m2",
        "moments_m3_m4",
        "ml_a1_l0.1",
        "ml_a1_l1",
    ]
    for fig in manifest["figures"]:
        assert (out / fig["csv"]).exists()
        assert fig["xlim"][0] == 0.0
        assert fig["ylim"][1] > 0.0
    assert (out / "snapshot_0.02_clipped.csv").exists()
    clipped = _read_csv(out / "snapshot_0.02_clipped.csv")
    assert all(float(r[1]) <= 10.0 * (1 + 1e-12) for r in clipped[1:])


def test_run_config_is_frozen():
    cfg = parse_config(SMALL_CONFIG)
    assert isinstance(cfg, RunConfig)
    with pytest.raises(AttributeError):
        cfg.out_dir = "elsewhere"
