"""Utility functions."""

from .parallel import parallel_map, resolve_threads
from .terminal import create_table, format_accuracy, format_ratio

__all__ = [
    "create_table",
    "format_accuracy",
    "format_ratio",
    "parallel_map",
    "resolve_threads",
]
