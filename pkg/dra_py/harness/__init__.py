"""Synthetic data, feature files, experiments and reports."""

from ..methods import METHODS, MethodSpec, parse_method
from .experiment import (
    fit_method,
    load_pools,
    predict,
    run_experiment,
    split_for,
    sweep_dimension,
)
from .io import (
    FORMATS,
    aggregate_reports,
    emit_report,
    emit_sweep,
    load_dataset,
    load_report,
    save_dataset,
)
from .models import ExperimentReport, SweepReport, mean_and_ste
from .synth import synth_generate

__all__ = [
    "FORMATS",
    "METHODS",
    "ExperimentReport",
    "MethodSpec",
    "SweepReport",
    "aggregate_reports",
    "emit_report",
    "emit_sweep",
    "fit_method",
    "load_dataset",
    "load_pools",
    "load_report",
    "mean_and_ste",
    "parse_method",
    "predict",
    "run_experiment",
    "save_dataset",
    "split_for",
    "sweep_dimension",
    "synth_generate",
]
