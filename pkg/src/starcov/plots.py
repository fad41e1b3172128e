"""Figure rendering for sweep results.

Pure presentation layer over the aggregate rows: the CSV stays the
machine-readable contract, the PNG is a convenience rendered next to it.
Uses the Agg backend so runs work headless.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

_STYLE = {
    "STAR-NOMA": dict(color="tab:blue", marker="o"),
    "STAR-OMA": dict(color="tab:blue", marker="s", linestyle="--"),
    "CR-NOMA": dict(color="tab:red", marker="^"),
    "CR-OMA": dict(color="tab:red", marker="v", linestyle="--"),
}

_AXIS_LABEL = {
    "mu_t": "transmission-side priority weight",
    "gamma_t": "transmission-side QoS target (bps/Hz)",
    "m_elements": "surface elements",
}


def render_scenario(rows: list[dict], scenario, png_path) -> Path:
    """Render one figure for a finished sweep and return the file path."""
    png_path = Path(png_path)
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    schemes = sorted({r["scheme"] for r in rows})
    pair_curve = scenario.swept_name == "mu_t"
    for scheme in schemes:
        pts = sorted((r for r in rows if r["scheme"] == scheme),
                     key=lambda r: r["swept_value"])
        style = _STYLE.get(scheme, {})
        if pair_curve:
            # Achievable coverage pairs as the priority weight sweeps.
            ax.plot([r["mean_dt"] for r in pts], [r["mean_dr"] for r in pts],
                    label=scheme, **style)
        elif scenario.swept_name == "m_elements":
            ax.plot([r["swept_value"] for r in pts],
                    [r["mean_dt"] for r in pts], label=scheme, **style)
        else:
            ax.plot([r["swept_value"] for r in pts],
                    [r["mean_d0"] for r in pts], label=scheme, **style)
    if pair_curve:
        ax.set_xlabel("mean transmission-side range (m)")
        ax.set_ylabel("mean reflection-side range (m)")
    else:
        ax.set_xlabel(_AXIS_LABEL.get(scenario.swept_name, scenario.swept_name))
        ax.set_ylabel("mean transmission-side range (m)"
                      if scenario.swept_name == "m_elements"
                      else "mean coverage range (m)")
    ax.set_title(scenario.name)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return png_path
