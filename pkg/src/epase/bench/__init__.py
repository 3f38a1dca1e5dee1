"""Benchmark harness: trial matrices, reports and the ``bench`` command."""
from .config import BenchSettings, DomainSpec, load_config
from .matrix import (
    BenchRecord,
    CellSummary,
    TrialMatrix,
    cell_mean,
    run_matrix,
    saturation_point,
    summarize,
)
from .report import emit_csv, emit_plots, emit_summary_csv, read_csv

__all__ = [
    "BenchRecord",
    "BenchSettings",
    "CellSummary",
    "DomainSpec",
    "TrialMatrix",
    "cell_mean",
    "emit_csv",
    "emit_plots",
    "emit_summary_csv",
    "load_config",
    "read_csv",
    "run_matrix",
    "saturation_point",
    "summarize",
]
