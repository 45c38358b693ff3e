import json
import math
import os
import subprocess
import sys

from mesoweyl import cli
from mesoweyl.experiments import EXPERIMENTS

ALL_FIGS = ["fig1", "fig4", "fig5", "fig6", "fig7", "fig9", "fig10", "fig11",
            "fig14", "fig15", "fig16", "fig17", "fig18"]


def test_every_published_figure_has_an_experiment_and_config():
    assert sorted(EXPERIMENTS) == sorted(ALL_FIGS)
    root = os.path.join(os.path.dirname(__file__), "..", "configs")
    for name in ALL_FIGS:
        path = os.path.join(root, f"{name}.json")
        assert os.path.exists(path)
        config = json.load(open(path))
        assert config["experiment"] == name
        assert set(config["params"]) == set(EXPERIMENTS[name].defaults)


def test_list_experiments(capsys):
    assert cli.main(["list-experiments"]) == 0
    out = capsys.readouterr().out
    for name in ALL_FIGS:
        assert name in out


def test_run_writes_csv_and_manifest(tmp_path):
    rc = cli.main(["run", "fig4", "--out", str(tmp_path)])
    assert rc == 0
    csv_path = tmp_path / "fig4.csv"
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "omega_t,absW_num,absW_coh,absW_sq,absW_th,argW_num,argW_coh,argW_sq,argW_th"
    assert len(lines) == 1 + 513
    first = [float(v) for v in lines[1].split(",")]
    assert first[0] == 0.0
    manifest = json.loads((tmp_path / "fig4.manifest.json").read_text())
    assert manifest["experiment"] == "fig4"
    assert manifest["n_rows"] == 513
    assert "version" in manifest and "params" in manifest and "convergence" in manifest


def test_run_is_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert cli.main(["run", "fig11", "--out", str(out)]) == 0
    assert (a / "fig11.csv").read_bytes() == (b / "fig11.csv").read_bytes()
    assert (a / "fig11.manifest.json").read_bytes() == (b / "fig11.manifest.json").read_bytes()


def test_run_with_config_overrides(tmp_path):
    config = {"experiment": "fig5", "params": {"samples": 17}}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(config))
    assert cli.main(["run", "--config", str(path), "--out", str(tmp_path)]) == 0
    lines = (tmp_path / "fig5.csv").read_text().splitlines()
    assert len(lines) == 18


def test_env_var_overrides_output_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("MESOWEYL_OUT", str(tmp_path / "env"))
    assert cli.main(["run", "fig4", "--out", str(tmp_path / "flag")]) == 0
    assert (tmp_path / "env" / "fig4.csv").exists()
    assert not (tmp_path / "flag").exists()


def test_invalid_configs_exit_2(tmp_path):
    assert cli.main(["run", "nosuchfig", "--out", str(tmp_path)]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["run", "--config", str(bad), "--out", str(tmp_path)]) == 2
    bad.write_text(json.dumps({"params": {}}))
    assert cli.main(["run", "--config", str(bad), "--out", str(tmp_path)]) == 2
    bad.write_text(json.dumps({"experiment": "fig4", "params": {"bogus": 1}}))
    assert cli.main(["run", "--config", str(bad), "--out", str(tmp_path)]) == 2
    assert cli.main(["run", "--out", str(tmp_path)]) == 2


def test_dim_cap_exhaustion_exits_3(tmp_path):
    assert cli.main(["run", "fig16", "--out", str(tmp_path), "--dim-cap", "8"]) == 3


def test_all_singular_exits_4(tmp_path):
    # one sample at phase zero: the odd-difference number ratio sits on its
    # tan-pole there, and these coherent amplitudes are phase-opposed so the
    # ring currents cancel too - every column of the only row is singular
    config = {
        "experiment": "fig15",
        "params": {"samples": 1, "periods": 0.0, "n1": 1, "n2": 2, "a2": math.pi + 1.0},
    }
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(config))
    rc = cli.main(["run", "--config", str(path), "--out", str(tmp_path)])
    assert rc == 4


def test_verify_cli_reports(capsys):
    assert cli.main(["verify", "twomode"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["suite"] == "twomode"
    assert report["passed"] is True
    assert all("max_error" in c and "tolerance" in c for c in report["checks"])


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "mesoweyl", "list-experiments"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "fig9" in proc.stdout
