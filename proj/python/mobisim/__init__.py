"""Downlink system-level simulator: UE velocity against throughput, cell-edge
throughput, spectral efficiency and fairness."""

import os
from pathlib import Path

_packaged = Path(__file__).resolve().parent / "data"
if _packaged.is_dir():
    os.environ.setdefault("MOBISIM_DATA_DIR", str(_packaged))

from ._mobisim import (  # noqa: E402
    ConfigError,
    SimConfig,
    average_throughput,
    bessel_j0,
    cell_edge_throughput,
    codebook,
    config_keys,
    doppler_hz,
    jain_fairness,
    lag1_correlation,
    load_config,
    mmse_layer_sinrs,
    parse_config,
    path_loss_db,
    results_csv,
    run_cli,
    run_point,
    run_sweep,
    select_rank_pmi,
    spectral_efficiency,
    write_outputs,
)

__all__ = [
    "ConfigError",
    "SimConfig",
    "average_throughput",
    "bessel_j0",
    "cell_edge_throughput",
    "codebook",
    "config_keys",
    "doppler_hz",
    "jain_fairness",
    "lag1_correlation",
    "load_config",
    "mmse_layer_sinrs",
    "parse_config",
    "path_loss_db",
    "results_csv",
    "run_cli",
    "run_point",
    "run_sweep",
    "select_rank_pmi",
    "spectral_efficiency",
    "write_outputs",
]
