"""Postprocessing figures for gpesolve outputs.

This package never recomputes physics: it only reads the solver's
diagnostics CSVs and binary field snapshots and renders figures from them.
"""

from .io import InputError, read_diagnostics_csv, read_snapshot, read_sweep_csv
from .plots import PLOT_KINDS, PlotError, render

__all__ = [
    "InputError",
    "PlotError",
    "PLOT_KINDS",
    "read_diagnostics_csv",
    "read_snapshot",
    "read_sweep_csv",
    "render",
]
__version__ = "0.1.0"
