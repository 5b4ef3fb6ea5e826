"""Iterated prisoner's dilemma with a learning tax regulator."""

from ._dsgame import (
    ConfigError,
    IoError,
    PayoffMatrix,
    classify_regime,
    cli,
    grid_search_forgiveness,
    incentive_cc_nash,
    incentivized_nash,
    is_stag_hunt,
    run_many,
    run_scenario,
    scenario_json,
    scenario_names,
    spe_tax_threshold,
    taxed_nash,
    trajectory_csv,
)

__all__ = [
    "ConfigError",
    "IoError",
    "PayoffMatrix",
    "classify_regime",
    "cli",
    "grid_search_forgiveness",
    "incentive_cc_nash",
    "incentivized_nash",
    "is_stag_hunt",
    "run_many",
    "run_scenario",
    "scenario_json",
    "scenario_names",
    "spe_tax_threshold",
    "taxed_nash",
    "trajectory_csv",
]
