"""Command line entry points.

Four subcommands:

    run <fig2|fig3|fig4|config.json>   sweep experiment -> CSV (+ figure)
    solve                              one instance -> JSON on stdout
    oracle                             solver vs grid search comparison
    selftest                           built-in invariant suites

Every physical parameter can be overridden with a flag named after the
parameter field (``--gamma-t 5``, ``--m-elements 120``, ...).  Setting one
priority weight adjusts the complementary one automatically.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .baseline import PINNED_FULL, conventional_gains
from .channel import effective_gain, generate_channel
from .experiments import (SCHEMES, preset_scenario, resolve_output_path,
                          run_scenario, scenario_from_json, solve_labeled)
from .oracle import GRID_N_DEFAULT, oracle_noma, oracle_oma
from .selftest import run_selftest
from .units import SystemParams, merge_params

_PARAM_FIELDS = [
    ("rho0_db", float, "reference path loss at 1 m, dB"),
    ("sigma2_dbm", float, "noise power, dBm"),
    ("pmax_dbm", float, "transmit power budget, dBm"),
    ("alpha_ru", float, "surface-to-user path-loss exponent"),
    ("alpha_ar", float, "AP-to-surface path-loss exponent"),
    ("k_ru", float, "surface-to-user Rician factor, linear"),
    ("k_ar", float, "AP-to-surface Rician factor, linear"),
    ("d_ap_ris", float, "AP-to-surface distance, m"),
    ("m_elements", int, "number of surface elements"),
    ("gamma_t", float, "transmission-side QoS target, bps/Hz"),
    ("gamma_r", float, "reflection-side QoS target, bps/Hz"),
    ("mu_t", float, "transmission-side priority weight"),
    ("mu_r", float, "reflection-side priority weight"),
]

_SCHEME_CHOICES = tuple(s.lower() for s in SCHEMES)


def _add_param_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("parameter overrides")
    for field, typ, help_text in _PARAM_FIELDS:
        group.add_argument("--" + field.replace("_", "-"), dest=field,
                           type=typ, default=None, help=help_text)


def _params_from_args(args: argparse.Namespace) -> SystemParams:
    overrides = {field: getattr(args, field)
                 for field, _, _ in _PARAM_FIELDS
                 if getattr(args, field) is not None}
    return merge_params(SystemParams(), overrides)


def _gains_for(label: str, params: SystemParams, seed: int):
    arch = label.split("-", 1)[0]
    if arch == "STAR":
        return effective_gain(generate_channel(params, seed)), None
    return conventional_gains(params, seed), PINNED_FULL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starcov",
        description="Coverage-range solver for a surface-aided two-user downlink.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a sweep scenario, write CSV and figure")
    p_run.add_argument("scenario",
                       help="preset name (fig2, fig3, fig4) or JSON config path")
    p_run.add_argument("--trials", type=int, default=None,
                       help="channel draws per grid point (default 100)")
    p_run.add_argument("--seed", type=int, default=None,
                       help="base seed; trial i uses seed base+i (default 0)")
    p_run.add_argument("--out", default=None, help="output CSV path")
    p_run.add_argument("--no-plot", action="store_true",
                       help="skip rendering the figure next to the CSV")

    p_solve = sub.add_parser("solve", help="solve one instance, print JSON")
    p_solve.add_argument("--scheme", choices=_SCHEME_CHOICES,
                         default="star-noma")
    p_solve.add_argument("--seed", type=int, default=0)
    _add_param_args(p_solve)

    p_oracle = sub.add_parser(
        "oracle", help="compare the solver against the brute-force grid search")
    p_oracle.add_argument("--scheme", choices=_SCHEME_CHOICES,
                          default="star-noma")
    p_oracle.add_argument("--seed", type=int, default=0)
    p_oracle.add_argument("--grid-n", type=int, default=GRID_N_DEFAULT)
    _add_param_args(p_oracle)

    sub.add_parser("selftest", help="run the built-in invariant suites")
    return parser


def _cmd_run(args: argparse.Namespace) -> int:
    name = args.scenario
    try:
        if name in ("fig2", "fig3", "fig4"):
            scenario = preset_scenario(
                name,
                trials=args.trials if args.trials is not None else 100,
                base_seed=args.seed if args.seed is not None else 0,
                output_path=args.out)
        else:
            scenario = scenario_from_json(name)
            updates = {}
            if args.trials is not None:
                updates["trials"] = args.trials
            if args.seed is not None:
                updates["base_seed"] = args.seed
            if args.out is not None:
                updates["output_path"] = args.out
            if updates:
                scenario = dataclasses.replace(scenario, **updates)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: cannot load scenario {name!r}: {exc}", file=sys.stderr)
        return 2
    try:
        run_scenario(scenario, make_plot=not args.no_plot)
    except OSError as exc:
        print(f"error: cannot write results: {exc}", file=sys.stderr)
        return 1
    csv_path = resolve_output_path(scenario)
    print(f"wrote {csv_path}")
    if not args.no_plot:
        print(f"wrote {csv_path.with_suffix('.png')}")
    return 0


def _cmd_solve(args: argparse.Namespace) -> int:
    params = _params_from_args(args)
    solution = solve_labeled(args.scheme.upper(), params, args.seed)
    print(json.dumps(solution.to_json_dict(), indent=2))
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    params = _params_from_args(args)
    label = args.scheme.upper()
    gains, pinned = _gains_for(label, params, args.seed)
    solution = solve_labeled(label, params, args.seed)
    if label.endswith("-NOMA"):
        ref = oracle_noma(gains, params, grid_n=args.grid_n, pinned_beta=pinned)
    else:
        ref = oracle_oma(gains, params, grid_n=args.grid_n, pinned_beta=pinned)
    diff = abs(solution.d0 - ref.d0)
    report = {
        "scheme": label,
        "seed": args.seed,
        "solver": solution.to_json_dict(),
        "oracle": ref.to_json_dict(),
        "abs_diff": diff,
        "within_slack": bool(diff <= ref.cell_slack),
    }
    print(json.dumps(report, indent=2))
    return 0


def _cmd_selftest(_args: argparse.Namespace) -> int:
    return 0 if run_selftest() else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"run": _cmd_run, "solve": _cmd_solve,
               "oracle": _cmd_oracle, "selftest": _cmd_selftest}[args.command]
    try:
        return handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
