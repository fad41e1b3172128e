"""Monte Carlo sweep harness with a bit-exact CSV contract.

A Scenario describes one sweep: which parameter varies, over which values,
how many channel draws per point, and which scheme/architecture
combinations to solve.  Presets reproduce the three standard sweeps
(priority split, transmission-side QoS, element count).

Reproducibility contract: trial i always uses seed ``base_seed + i``, for
every swept value and every scheme, so comparisons across schemes are
paired on identical fading.  The CSV bytes are a pure function of the
scenario: fixed header, 9-significant-digit floats, rows sorted by
(swept value, scheme label), "\\n" line endings.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .baseline import PINNED_FULL, conventional_gains
from .channel import effective_gain, generate_channel
from .noma import solve_noma
from .oma import solve_oma
from .solution import CoverageSolution
from .units import SystemParams, merge_params

SCHEMES = ("STAR-NOMA", "STAR-OMA", "CR-NOMA", "CR-OMA")

CSV_HEADER = ("swept_name,swept_value,scheme,trials,"
              "mean_d0,std_d0,mean_dt,mean_dr,infeasible_count")

OUT_DIR_ENV = "STARCOV_OUT_DIR"


@dataclass(frozen=True)
class Scenario:
    """One sweep experiment: a varied parameter, a grid, and solver labels."""

    name: str
    swept_name: str
    values: tuple
    base: SystemParams
    schemes: tuple[str, ...] = SCHEMES
    trials: int = 100
    base_seed: int = 0
    output_path: str | None = None

    def __post_init__(self) -> None:
        if len(self.values) == 0:
            raise ValueError("scenario needs a nonempty value grid")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials!r}")
        bad = [s for s in self.schemes if s not in SCHEMES]
        if bad or not self.schemes:
            raise ValueError(f"unknown schemes {bad!r}; pick from {SCHEMES}")
        object.__setattr__(self, "values", tuple(self.values))
        object.__setattr__(self, "schemes", tuple(self.schemes))


def preset_scenario(name: str, trials: int = 100, base_seed: int = 0,
                    output_path: str | None = None) -> Scenario:
    """Built-in sweeps; see the module docstring."""
    common = dict(trials=trials, base_seed=base_seed, output_path=output_path)
    if name == "fig2":
        # Priority sweep at a 5 bps/Hz target for both users.
        base = merge_params(SystemParams(), {"gamma_t": 5.0, "gamma_r": 5.0})
        return Scenario(name="fig2", swept_name="mu_t",
                        values=tuple(i / 10 for i in range(1, 10)),
                        base=base, **common)
    if name == "fig3":
        # Transmission-side QoS sweep at fixed reflection-side target.
        base = merge_params(SystemParams(), {"gamma_r": 5.0, "mu_t": 0.6})
        return Scenario(name="fig3", swept_name="gamma_t",
                        values=tuple(float(g) for g in range(1, 10)),
                        base=base, **common)
    if name == "fig4":
        # Surface-size sweep at a relaxed 3 bps/Hz target.
        base = merge_params(SystemParams(),
                            {"gamma_t": 3.0, "gamma_r": 3.0, "mu_t": 0.6})
        return Scenario(name="fig4", swept_name="m_elements",
                        values=(60, 80, 100, 120, 140), base=base, **common)
    raise ValueError(f"unknown preset {name!r}; expected fig2, fig3 or fig4")


def scenario_from_json(path: str) -> Scenario:
    """Custom scenario from a JSON document.

    Keys: swept_name, values (required); name, trials, base_seed, schemes,
    output_path, params (SystemParams overrides) optional.
    """
    with open(path) as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError("scenario config must be a JSON object")
    unknown = set(doc) - {"name", "swept_name", "values", "trials",
                          "base_seed", "schemes", "output_path", "params"}
    if unknown:
        raise ValueError(f"unknown scenario keys: {sorted(unknown)}")
    base = merge_params(SystemParams(), doc.get("params", {}))
    return Scenario(
        name=doc.get("name", "custom"),
        swept_name=doc["swept_name"],
        values=tuple(doc["values"]),
        base=base,
        schemes=tuple(doc.get("schemes", SCHEMES)),
        trials=int(doc.get("trials", 100)),
        base_seed=int(doc.get("base_seed", 0)),
        output_path=doc.get("output_path"),
    )


def solve_labeled(label: str, params: SystemParams, seed: int) -> CoverageSolution:
    """Draw the label's channel and run the label's solver, one trial."""
    arch, access = label.split("-", 1)
    if arch == "STAR":
        gains = effective_gain(generate_channel(params, seed))
        pinned = None
    elif arch == "CR":
        gains = conventional_gains(params, seed)
        pinned = PINNED_FULL
    else:
        raise ValueError(f"unknown architecture in scheme label {label!r}")
    if access == "NOMA":
        return solve_noma(gains, params, pinned_beta=pinned)
    if access == "OMA":
        return solve_oma(gains, params, pinned_beta=pinned)
    raise ValueError(f"unknown access mode in scheme label {label!r}")


def _aggregate(solutions: list[CoverageSolution]) -> dict:
    feas = [s for s in solutions if s.feasible]
    if feas:
        d0 = np.asarray([s.d0 for s in feas])
        stats = {"mean_d0": float(d0.mean()), "std_d0": float(d0.std(ddof=0)),
                 "mean_dt": float(np.mean([s.d_t for s in feas])),
                 "mean_dr": float(np.mean([s.d_r for s in feas]))}
    else:
        stats = {"mean_d0": 0.0, "std_d0": 0.0, "mean_dt": 0.0, "mean_dr": 0.0}
    stats["infeasible_count"] = len(solutions) - len(feas)
    return stats


def run_scenario(scenario: Scenario, write_csv: bool = True,
                 make_plot: bool = True) -> list[dict]:
    """Solve the whole sweep and return one aggregate row per (value, scheme).

    Writes the CSV (and a rendered figure next to it) unless disabled.
    """
    rows = []
    for value in scenario.values:
        params_v = merge_params(scenario.base, {scenario.swept_name: value})
        for scheme in scenario.schemes:
            sols = [solve_labeled(scheme, params_v, scenario.base_seed + t)
                    for t in range(scenario.trials)]
            row = {"swept_name": scenario.swept_name,
                   "swept_value": float(value), "scheme": scheme,
                   "trials": scenario.trials}
            row.update(_aggregate(sols))
            rows.append(row)
    rows.sort(key=lambda r: (r["swept_value"], r["scheme"]))

    if write_csv:
        csv_path = resolve_output_path(scenario)
        write_rows_csv(rows, csv_path)
        if make_plot:
            from .plots import render_scenario
            render_scenario(rows, scenario, csv_path.with_suffix(".png"))
    return rows


def resolve_output_path(scenario: Scenario) -> Path:
    """Output CSV location; relative paths land in the configured out dir."""
    raw = Path(scenario.output_path or f"{scenario.name}.csv")
    if raw.is_absolute():
        return raw
    return Path(os.environ.get(OUT_DIR_ENV, ".")) / raw


def write_rows_csv(rows: list[dict], path: Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(",".join([
            r["swept_name"],
            f"{r['swept_value']:.9g}",
            r["scheme"],
            str(r["trials"]),
            f"{r['mean_d0']:.9g}",
            f"{r['std_d0']:.9g}",
            f"{r['mean_dt']:.9g}",
            f"{r['mean_dr']:.9g}",
            str(r["infeasible_count"]),
        ]))
    path.write_text("\n".join(lines) + "\n")


def rows_from_csv(path) -> list[dict]:
    """Parse a CSV produced by write_rows_csv back into row dicts."""
    text = Path(path).read_text().strip().splitlines()
    if not text or text[0] != CSV_HEADER:
        raise ValueError(f"unrecognized results header in {path}")
    rows = []
    for line in text[1:]:
        f = line.split(",")
        rows.append({"swept_name": f[0], "swept_value": float(f[1]),
                     "scheme": f[2], "trials": int(f[3]),
                     "mean_d0": float(f[4]), "std_d0": float(f[5]),
                     "mean_dt": float(f[6]), "mean_dr": float(f[7]),
                     "infeasible_count": int(f[8])})
    return rows
