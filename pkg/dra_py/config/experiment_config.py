"""Experiment configuration (JSON document mirroring the dataclass fields)."""

import json
import math
from dataclasses import asdict, dataclass, field, fields
from numbers import Real
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from ..errors import ConfigError, IoError
from ..methods import parse_method

DATASET_KINDS = ("synth", "csv")
SPLITS = ("random", "fixed")
ANCHORS = ("last", "first")
STRATEGIES = ("nfs", "euclid")


@dataclass
class DatasetSource:
    """Where the sample pools come from: a feature CSV or the synthetic generator."""

    kind: str = "synth"
    path: Optional[str] = None
    c: int = 10
    d: int = 30
    samples_per_class: int = 9
    variation_rank: int = 5
    noise_sigma: float = 0.1
    class_sep: float = 1.0
    variation_scale: Optional[float] = None
    seed: int = 0

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DatasetSource":
        return cls(**_known_fields(cls, data, "dataset"))

    def validate(self) -> None:
        _check_choice("dataset.kind", self.kind, DATASET_KINDS)
        if self.path is not None and not isinstance(self.path, str):
            raise ConfigError(f"dataset.path must be a string, got {self.path!r}")
        if self.kind == "csv" and not self.path:
            raise ConfigError("dataset.path is required for csv datasets")
        for name in ("c", "d", "samples_per_class"):
            _check_int(f"dataset.{name}", getattr(self, name), minimum=1)
        _check_int("dataset.variation_rank", self.variation_rank, minimum=0)
        _check_int("dataset.seed", self.seed, minimum=0)
        _check_number("dataset.noise_sigma", self.noise_sigma, minimum=0.0)
        _check_number("dataset.class_sep", self.class_sep, minimum=0.0)
        if self.variation_scale is not None:
            _check_number("dataset.variation_scale", self.variation_scale, minimum=0.0)


@dataclass
class ExperimentConfig:
    """
    One experiment: method, split protocol and hyper-parameters.

    ``t`` is an integer or ``"auto"`` (the class count); ``mu`` overrides the
    per-model defaults ``mu_pe`` / ``mu_te`` when set.
    """

    method: str = "DRA-PE-eig"
    counts: List[int] = field(default_factory=lambda: [3, 3, 3])
    repetitions: int = 30
    seed: int = 0
    rho: float = 1e-2
    mu: Optional[float] = None
    mu_pe: float = 1e-3
    mu_te: float = 1e1
    t: Union[int, str] = "auto"
    pca_q: Optional[int] = None
    strategy: str = "nfs"
    select_count: Optional[int] = None
    split: str = "random"
    anchor: str = "last"
    eig_backend: str = "jacobi"
    dataset: DatasetSource = field(default_factory=DatasetSource)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        values = _known_fields(cls, data, "config")
        if "dataset" in values:
            if not isinstance(values["dataset"], dict):
                raise ConfigError("dataset must be a JSON object")
            values["dataset"] = DatasetSource.from_dict(values["dataset"])
        config = cls(**values)
        config.validate()
        return config

    @classmethod
    def load(cls, path: Path, defaults: Optional[Dict[str, Any]] = None) -> "ExperimentConfig":
        """
        Load a config file; missing or malformed files raise.
        ``defaults`` fill top-level keys the file leaves out.
        """
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"{path}: invalid JSON ({e})") from e
        except OSError as e:
            raise IoError(f"cannot read config {path}: {e}") from e
        if defaults and isinstance(data, dict):
            data = {**defaults, **data}
        return cls.from_dict(data)

    def save(self, path: Path) -> None:
        try:
            with open(path, "w", encoding="utf-8") as f:
                json.dump(self.to_dict(), f, indent=2)
        except OSError as e:
            raise IoError(f"cannot write config {path}: {e}") from e

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def validate(self) -> None:
        parse_method(self.method)
        if (
            not isinstance(self.counts, list)
            or len(self.counts) != 3
            or any(not _is_int(n) or n < 2 for n in self.counts)
        ):
            raise ConfigError(f"counts must be three integers >= 2, got {self.counts!r}")
        _check_int("repetitions", self.repetitions, minimum=1)
        _check_int("seed", self.seed, minimum=0)
        _check_number("rho", self.rho, positive=True)
        if self.mu is not None:
            _check_number("mu", self.mu, positive=True)
        _check_number("mu_pe", self.mu_pe, positive=True)
        _check_number("mu_te", self.mu_te, positive=True)
        if self.t != "auto" and (not _is_int(self.t) or self.t < 1):
            raise ConfigError(f"t must be a positive integer or 'auto', got {self.t!r}")
        if self.pca_q is not None:
            _check_int("pca_q", self.pca_q, minimum=1)
        if self.select_count is not None:
            _check_int("select_count", self.select_count, minimum=1)
        _check_choice("strategy", self.strategy, STRATEGIES)
        _check_choice("split", self.split, SPLITS)
        _check_choice("anchor", self.anchor, ANCHORS)
        _check_choice("eig_backend", self.eig_backend, ("jacobi", "lapack"))
        self.dataset.validate()

    def resolved_t(self, c: int) -> int:
        return c if self.t == "auto" else int(self.t)

    def resolved_mu(self, model: str) -> float:
        if self.mu is not None:
            return self.mu
        return self.mu_pe if model == "PE" else self.mu_te

    def resolve(self, c: int) -> Dict[str, Any]:
        """Config echo with ``t`` and ``mu`` resolved for the chosen method."""
        spec = parse_method(self.method)
        echo = self.to_dict()
        echo["c"] = c
        if spec.trains:
            echo["t"] = self.resolved_t(c)
            echo["mu"] = self.resolved_mu(spec.model) if spec.reg == "eig" else None
        return echo


def _known_fields(cls, data: Dict[str, Any], where: str) -> Dict[str, Any]:
    names = {f.name for f in fields(cls)}
    unknown = sorted(set(data) - names)
    if unknown:
        raise ConfigError(f"unknown {where} keys: {unknown}")
    return dict(data)


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _check_int(name: str, value: Any, minimum: int) -> None:
    if not _is_int(value):
        raise ConfigError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {value}")


def _check_number(
    name: str, value: Any, minimum: Optional[float] = None, positive: bool = False
) -> None:
    if not isinstance(value, Real) or isinstance(value, bool) or not math.isfinite(value):
        raise ConfigError(f"{name} must be a finite number, got {value!r}")
    if positive and not value > 0:
        raise ConfigError(f"{name} must be > 0, got {value}")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {value}")


def _check_choice(name: str, value: Any, choices) -> None:
    if not isinstance(value, str) or value not in choices:
        raise ConfigError(f"{name} must be one of {choices}, got {value!r}")
