"""Coverage-range simulator for a surface-aided two-user downlink.

A single energy-splitting surface (or a pair of conventional single-mode
surfaces) carries both users' links; the library answers "how far can the
pair of users be pushed while both rate targets stay feasible" under
superposed (NOMA) and orthogonal (OMA) transmission, and sweeps that answer
over priorities, targets and surface size.
"""

from .baseline import (conventional_gains, solve_conventional_noma,
                       solve_conventional_oma, split_elements)
from .channel import (ChannelRealization, EffectiveGains, dump_realization_csv,
                      effective_gain, generate_channel)
from .experiments import (SCHEMES, Scenario, preset_scenario, run_scenario,
                          scenario_from_json, solve_labeled)
from .noma import min_power_at, sic_beta_bound, solve_noma
from .oma import oma_reach, solve_oma, solve_oma_fixed_omega
from .oracle import OracleResult, oracle_noma, oracle_oma
from .rates import (Allocation, DecodingOrder, GainOrder, channel_gain_order,
                    noma_rate, oma_rate)
from .selftest import run_selftest
from .solution import CoverageSolution, Scheme
from .units import (SystemParams, db_to_linear, dbm_to_watts, linear_to_db,
                    merge_params, params_from_dict, params_from_json)

__version__ = "0.1.0"

__all__ = [
    "Allocation",
    "ChannelRealization",
    "CoverageSolution",
    "DecodingOrder",
    "EffectiveGains",
    "GainOrder",
    "OracleResult",
    "SCHEMES",
    "Scenario",
    "Scheme",
    "SystemParams",
    "channel_gain_order",
    "conventional_gains",
    "db_to_linear",
    "dbm_to_watts",
    "dump_realization_csv",
    "effective_gain",
    "generate_channel",
    "linear_to_db",
    "merge_params",
    "min_power_at",
    "noma_rate",
    "oma_rate",
    "oma_reach",
    "oracle_noma",
    "oracle_oma",
    "params_from_dict",
    "params_from_json",
    "preset_scenario",
    "run_scenario",
    "run_selftest",
    "scenario_from_json",
    "sic_beta_bound",
    "solve_conventional_noma",
    "solve_conventional_oma",
    "solve_labeled",
    "solve_noma",
    "solve_oma",
    "solve_oma_fixed_omega",
    "split_elements",
    "__version__",
]
