"""Built-in invariant suites, runnable via the CLI.

These are the structural facts the solvers lean on.  Each check returns a
pass/fail with a one-line detail so the CLI can print a readable table;
the test suite reruns the same checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import effective_gain, generate_channel
from .noma import min_power_at, solve_noma
from .oma import solve_oma
from .rates import DecodingOrder
from .units import SystemParams, merge_params

_SEED = 12345


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def check_ratio_power_midpoint_convexity(samples: int = 10_000) -> CheckResult:
    """Midpoint convexity of (x, y) -> y**a / x for a in [2, 4], x, y > 0.

    The power-minimization inner problem is a sum of maps of this shape, so
    its single-variable restriction having no spurious minima rests here.
    """
    rng = np.random.default_rng(_SEED)
    x1, x2, y1, y2 = rng.uniform(1e-3, 10.0, size=(4, samples))
    a = rng.uniform(2.0, 4.0, size=samples)

    def f(x, y):
        return y ** a / x

    lhs = f((x1 + x2) / 2.0, (y1 + y2) / 2.0)
    rhs = (f(x1, y1) + f(x2, y2)) / 2.0
    worst = float(np.max(lhs - rhs * (1.0 + 1e-12)))
    return CheckResult("ratio-power midpoint convexity", worst <= 0.0,
                       f"max violation {worst:.3e} over {samples} samples")


def check_phase_alignment_optimal(n_grid: int = 720) -> CheckResult:
    """(sum |q|)**2 equals the brute-force phase-grid maximum for tiny arrays.

    The first element's phase can be fixed at zero without loss (a common
    rotation leaves the modulus unchanged, and the cyclic grid is closed
    under shifts), leaving at most a 2-d grid.
    """
    rng = np.random.default_rng(_SEED + 1)
    theta = 2.0 * np.pi * np.arange(n_grid) / n_grid
    phases = np.exp(1j * theta)
    worst_rel = 0.0
    for m in (1, 2, 3):
        q = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        coherent = float(np.sum(np.abs(q))) ** 2
        if m == 1:
            brute = float(np.abs(q[0])) ** 2
        elif m == 2:
            brute = float(np.max(np.abs(q[0] + q[1] * phases)) ** 2)
        else:
            combo = q[0] + q[1] * phases[:, None] + q[2] * phases[None, :]
            brute = float(np.max(np.abs(combo)) ** 2)
        if brute > coherent * (1.0 + 1e-12):
            return CheckResult("phase-alignment optimality", False,
                               f"grid beat the aligned gain at m={m}")
        worst_rel = max(worst_rel, (coherent - brute) / coherent)
    return CheckResult("phase-alignment optimality", worst_rel <= 1e-4,
                       f"max relative grid gap {worst_rel:.2e}")


def _d0(params: SystemParams, seed: int, access: str) -> float:
    gains = effective_gain(generate_channel(params, seed))
    sol = solve_noma(gains, params) if access == "NOMA" else solve_oma(gains, params)
    return sol.d0


def check_coverage_monotonicity(seeds=(1, 2, 3)) -> CheckResult:
    """Coverage grows with power and surface size, shrinks with the target."""
    base = merge_params(SystemParams(), {"mu_t": 0.6})
    slack = 1e-3
    sweeps = [
        ("pmax_dbm", (20.0, 30.0, 40.0), +1),
        ("gamma_t", (2.0, 5.0, 8.0), -1),
        ("m_elements", (60, 100, 140), +1),
    ]
    for access in ("NOMA", "OMA"):
        for field, values, sign in sweeps:
            for seed in seeds:
                d0s = [_d0(merge_params(base, {field: v}), seed, access)
                       for v in values]
                diffs = sign * np.diff(d0s)
                if np.any(diffs < -slack):
                    return CheckResult(
                        "coverage monotonicity", False,
                        f"{access} d0 not monotone in {field} at seed {seed}: {d0s}")
    return CheckResult("coverage monotonicity", True,
                       f"{len(seeds)} seeds x 3 sweeps x 2 schemes")


def check_bisection_feasibility_monotone(seed: int = 1) -> CheckResult:
    """Required power is nondecreasing in the range, so bisection is sound."""
    params = merge_params(SystemParams(), {"mu_t": 0.6})
    gains = effective_gain(generate_channel(params, seed))
    for order in DecodingOrder:
        grid = np.linspace(1.0 / max(params.mu_t, params.mu_r), 200.0, 80)
        powers = [min_power_at(d, order, gains, params).power for d in grid]
        feasible = [p <= params.pmax_w for p in powers]
        if np.any(np.diff(powers) < -1e-12):
            return CheckResult("bisection feasibility monotone", False,
                               f"required power decreased along d0, {order.name}")
        if np.any(np.diff(np.asarray(feasible, dtype=int)) > 0):
            return CheckResult("bisection feasibility monotone", False,
                               f"feasibility regained at larger d0, {order.name}")
    return CheckResult("bisection feasibility monotone", True,
                       "80-point range probe, both orders")


ALL_CHECKS = (
    check_ratio_power_midpoint_convexity,
    check_phase_alignment_optimal,
    check_coverage_monotonicity,
    check_bisection_feasibility_monotone,
)


def run_selftest(print_fn=print) -> bool:
    ok = True
    for check in ALL_CHECKS:
        result = check()
        ok &= result.passed
        print_fn(f"[{'PASS' if result.passed else 'FAIL'}] "
                 f"{result.name}: {result.detail}")
    return ok
