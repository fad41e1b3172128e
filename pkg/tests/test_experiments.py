import json

import pytest

import starcov as sc
from starcov.experiments import CSV_HEADER, rows_from_csv, write_rows_csv


def tiny_scenario(out, trials=3):
    base = sc.merge_params(sc.SystemParams(), {"m_elements": 40, "mu_t": 0.6})
    return sc.Scenario(
        name="tiny", swept_name="mu_t", values=(0.4, 0.6), base=base,
        schemes=("STAR-NOMA", "CR-OMA"), trials=trials, base_seed=0,
        output_path=str(out),
    )


def test_preset_priority_sweep():
    s = sc.preset_scenario("fig2")
    assert s.swept_name == "mu_t"
    assert s.values == tuple(round(0.1 * i, 1) for i in range(1, 10))
    assert s.base.gamma_t == 5.0 and s.base.gamma_r == 5.0
    assert s.trials == 100


def test_preset_target_sweep():
    s = sc.preset_scenario("fig3")
    assert s.swept_name == "gamma_t"
    assert s.values == tuple(float(g) for g in range(1, 10))
    assert s.base.gamma_r == 5.0
    assert s.base.mu_t == pytest.approx(0.6)


def test_preset_element_sweep():
    s = sc.preset_scenario("fig4")
    assert s.swept_name == "m_elements"
    assert s.values == (60, 80, 100, 120, 140)
    assert s.base.gamma_t == 3.0 and s.base.gamma_r == 3.0
    assert s.base.mu_t == pytest.approx(0.6)


def test_unknown_preset():
    with pytest.raises(ValueError):
        sc.preset_scenario("fig9")


def test_scenario_validation():
    base = sc.SystemParams()
    with pytest.raises(ValueError):
        sc.Scenario(name="x", swept_name="mu_t", values=(), base=base)
    with pytest.raises(ValueError):
        sc.Scenario(name="x", swept_name="mu_t", values=(0.5,), base=base, trials=0)
    with pytest.raises(ValueError):
        sc.Scenario(name="x", swept_name="mu_t", values=(0.5,), base=base,
                    schemes=("STAR-NOMA", "bogus"))


def test_scenario_from_json(tmp_path):
    cfg = {
        "name": "custom",
        "swept_name": "gamma_t",
        "values": [2.0, 4.0],
        "params": {"mu_t": 0.7, "m_elements": 50},
        "schemes": ["STAR-NOMA", "STAR-OMA"],
        "trials": 2,
        "base_seed": 5,
    }
    path = tmp_path / "sweep.json"
    path.write_text(json.dumps(cfg))
    s = sc.scenario_from_json(path)
    assert s.values == (2.0, 4.0)
    assert s.base.mu_r == pytest.approx(0.3)
    assert s.base.m_elements == 50
    assert s.trials == 2 and s.base_seed == 5

    cfg["bogus_key"] = 1
    path.write_text(json.dumps(cfg))
    with pytest.raises(ValueError):
        sc.scenario_from_json(path)


def test_solve_labeled_dispatch(params06):
    d = {label: sc.solve_labeled(label, params06, 0).d0 for label in sc.SCHEMES}
    assert d["STAR-NOMA"] >= d["STAR-OMA"] - 1e-6
    assert d["CR-NOMA"] >= d["CR-OMA"] - 1e-6
    assert d["STAR-NOMA"] >= d["CR-NOMA"] - 1e-6
    with pytest.raises(ValueError):
        sc.solve_labeled("STAR-CDMA", params06, 0)


def test_csv_reruns_byte_identical(tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    sc.run_scenario(tiny_scenario(out1), make_plot=False)
    sc.run_scenario(tiny_scenario(out2), make_plot=False)
    b1, b2 = out1.read_bytes(), out2.read_bytes()
    assert b1 == b2
    assert b1.decode().splitlines()[0] == CSV_HEADER
    assert b"\r" not in b1


def test_rows_sorted_and_complete(tmp_path):
    out = tmp_path / "s.csv"
    rows = sc.run_scenario(tiny_scenario(out), make_plot=False)
    assert len(rows) == 4  # 2 values x 2 schemes
    keys = [(r["swept_value"], r["scheme"]) for r in rows]
    assert keys == sorted(keys)
    for r in rows:
        assert r["trials"] == 3
        assert r["infeasible_count"] == 0
        # the swept value is mu_t itself, so the T placement rides it
        assert r["mean_dt"] == pytest.approx(r["swept_value"] * r["mean_d0"], rel=1e-9)
        assert r["std_d0"] >= 0.0


def test_csv_round_trip(tmp_path):
    out = tmp_path / "s.csv"
    rows = sc.run_scenario(tiny_scenario(out), make_plot=False)
    back = rows_from_csv(out)
    assert len(back) == len(rows)
    for a, b in zip(rows, back):
        assert a["scheme"] == b["scheme"]
        assert b["mean_d0"] == pytest.approx(a["mean_d0"], rel=1e-8)
        assert b["trials"] == a["trials"]


def test_header_rejected_on_mismatch(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("nope,nope\n1,2\n")
    with pytest.raises(ValueError):
        rows_from_csv(bad)


def test_all_infeasible_rows_zeroed(tmp_path):
    base = sc.merge_params(sc.SystemParams(),
                           {"m_elements": 16, "gamma_t": 40.0, "gamma_r": 40.0})
    s = sc.Scenario(name="hard", swept_name="mu_t", values=(0.5,), base=base,
                    schemes=("STAR-NOMA",), trials=3,
                    output_path=str(tmp_path / "h.csv"))
    rows = sc.run_scenario(s, make_plot=False)
    assert rows[0]["infeasible_count"] == 3
    assert rows[0]["mean_d0"] == 0.0
    assert rows[0]["std_d0"] == 0.0


def test_figure_rendered_next_to_csv(tmp_path):
    out = tmp_path / "fig.csv"
    sc.run_scenario(tiny_scenario(out, trials=2), make_plot=True)
    assert out.exists()
    png = out.with_suffix(".png")
    assert png.exists()
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_output_dir_env_redirect(tmp_path, monkeypatch):
    monkeypatch.setenv("STARCOV_OUT_DIR", str(tmp_path / "sink"))
    s = tiny_scenario("rel.csv", trials=2)
    sc.run_scenario(s, make_plot=False)
    assert (tmp_path / "sink" / "rel.csv").exists()


def test_write_rows_formatting(tmp_path):
    row = {"swept_name": "mu_t", "swept_value": 0.5, "scheme": "STAR-NOMA",
           "trials": 2, "mean_d0": 12.3456789123, "std_d0": 0.0,
           "mean_dt": 6.17283945615, "mean_dr": 6.17283945615,
           "infeasible_count": 0}
    path = tmp_path / "one.csv"
    write_rows_csv([row], path)
    text = path.read_text()
    lines = text.splitlines()
    assert lines[1] == "mu_t,0.5,STAR-NOMA,2,12.3456789,0,6.17283946,6.17283946,0"
    assert text.endswith("\n")
