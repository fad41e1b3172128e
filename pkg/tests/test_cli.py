import json

import pytest

import starcov as sc
from starcov.cli import main


def run_cli(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_solve_reports_json(capsys, params06, gains7):
    rc, out, _ = run_cli(capsys, "solve", "--scheme", "star-noma",
                         "--mu-t", "0.6", "--seed", "7")
    assert rc == 0
    doc = json.loads(out)
    assert doc["feasible"] is True
    assert doc["scheme"] == "NOMA"
    expect = sc.solve_noma(gains7, params06)
    assert doc["d0"] == pytest.approx(expect.d0, rel=1e-12)
    for key in ("d_t", "d_r", "p_t", "p_r", "beta_t", "beta_r", "order",
                "residuals"):
        assert key in doc


def test_solve_all_schemes(capsys):
    d0s = {}
    for scheme in ("star-noma", "star-oma", "cr-noma", "cr-oma"):
        rc, out, _ = run_cli(capsys, "solve", "--scheme", scheme, "--seed", "3")
        assert rc == 0
        d0s[scheme] = json.loads(out)["d0"]
    assert d0s["star-noma"] >= d0s["cr-noma"] - 1e-6
    assert d0s["star-oma"] >= d0s["cr-oma"] - 1e-6


def test_solve_infeasible_still_exits_zero(capsys):
    rc, out, _ = run_cli(capsys, "solve", "--scheme", "star-noma",
                         "--gamma-t", "60", "--m-elements", "16")
    assert rc == 0
    doc = json.loads(out)
    assert doc["feasible"] is False
    assert doc["d0"] == 0.0


def test_solve_parameter_overrides(capsys):
    rc, out, _ = run_cli(capsys, "solve", "--scheme", "star-oma",
                         "--pmax-dbm", "40", "--seed", "3")
    assert rc == 0
    hi = json.loads(out)["d0"]
    rc, out, _ = run_cli(capsys, "solve", "--scheme", "star-oma", "--seed", "3")
    assert rc == 0
    assert hi > json.loads(out)["d0"]


def test_unknown_flag_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--warp-factor", "9"])
    assert exc.value.code == 2


def test_bad_value_exits_two(capsys):
    rc = main(["solve", "--scheme", "star-noma", "--mu-t", "1.5"])
    assert rc == 2
    assert "mu" in capsys.readouterr().err


def test_run_preset_writes_outputs(capsys, tmp_path):
    out = tmp_path / "sweep.csv"
    rc, text, _ = run_cli(capsys, "run", "fig4", "--trials", "2",
                          "--out", str(out))
    assert rc == 0
    assert out.exists()
    assert out.with_suffix(".png").exists()
    assert str(out) in text
    lines = out.read_text().splitlines()
    assert len(lines) == 1 + 5 * 4  # header + values x schemes


def test_run_no_plot(capsys, tmp_path):
    out = tmp_path / "sweep.csv"
    rc, _, _ = run_cli(capsys, "run", "fig2", "--trials", "1",
                       "--out", str(out), "--no-plot")
    assert rc == 0
    assert out.exists()
    assert not out.with_suffix(".png").exists()


def test_run_config_file(capsys, tmp_path):
    cfg = {
        "name": "mini",
        "swept_name": "gamma_t",
        "values": [3.0, 5.0],
        "params": {"mu_t": 0.6, "m_elements": 40},
        "schemes": ["STAR-NOMA", "CR-NOMA"],
        "trials": 2,
    }
    cfg_path = tmp_path / "mini.json"
    cfg_path.write_text(json.dumps(cfg))
    out = tmp_path / "mini.csv"
    rc, _, _ = run_cli(capsys, "run", str(cfg_path), "--out", str(out),
                       "--no-plot")
    assert rc == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 1 + 2 * 2


def test_run_missing_config_exits_two(capsys, tmp_path):
    rc = main(["run", str(tmp_path / "nope.json")])
    assert rc == 2
    assert capsys.readouterr().err != ""


def test_run_unwritable_path_exits_one(capsys, tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("")
    rc = main(["run", "fig4", "--trials", "1", "--no-plot",
               "--out", str(blocker / "x.csv")])
    assert rc == 1
    assert capsys.readouterr().err != ""


def test_run_env_output_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("STARCOV_OUT_DIR", str(tmp_path / "outputs"))
    rc, _, _ = run_cli(capsys, "run", "fig4", "--trials", "1",
                       "--out", "rel.csv", "--no-plot")
    assert rc == 0
    assert (tmp_path / "outputs" / "rel.csv").exists()


def test_oracle_subcommand(capsys):
    rc, out, _ = run_cli(capsys, "oracle", "--scheme", "star-oma",
                         "--mu-t", "0.6", "--seed", "7", "--grid-n", "64")
    assert rc == 0
    doc = json.loads(out)
    assert doc["within_slack"] is True
    assert doc["abs_diff"] <= doc["oracle"]["cell_slack"]
    assert doc["solver"]["d0"] >= doc["oracle"]["d0"] - 1e-9


def test_selftest_subcommand(capsys):
    rc, out, _ = run_cli(capsys, "selftest")
    assert rc == 0
    assert "[PASS]" in out
    assert "[FAIL]" not in out
