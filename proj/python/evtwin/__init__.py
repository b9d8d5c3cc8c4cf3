"""Town energy digital twin: EV charging, rooftop PV and home batteries."""

import json

from ._core import (
    EvtwinError,
    __version__,
    build_tours,
    config_hash,
    dump_config,
    monthly_max,
    simulate_building,
    size_bess,
    size_pv,
)
from . import _core


def simulate(config_path, scenarios=None):
    """Run scenarios for a config file; returns a dict keyed by scenario id."""
    if isinstance(scenarios, str):
        scenarios = [scenarios]
    texts = _core.simulate_json(str(config_path), list(scenarios or []))
    reports = [json.loads(t) for t in texts]
    return {r["scenario"]: r for r in reports}


def mobility_validation(config_path):
    return json.loads(_core.mobility_json(str(config_path)))


__all__ = [
    "EvtwinError",
    "build_tours",
    "config_hash",
    "dump_config",
    "mobility_validation",
    "monthly_max",
    "simulate",
    "simulate_building",
    "size_bess",
    "size_pv",
]
