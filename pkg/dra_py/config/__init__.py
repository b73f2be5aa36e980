"""Configuration management."""

from .experiment_config import DatasetSource, ExperimentConfig
from .local_config import LocalConfig

__all__ = ["DatasetSource", "ExperimentConfig", "LocalConfig"]
