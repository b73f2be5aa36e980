"""Data models for experiment reports."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ParseError

REPORT_FIELDS = (
    "method",
    "accuracies",
    "mean",
    "ste",
    "train_seconds",
    "test_seconds",
    "config",
)


def mean_and_ste(accuracies: Sequence[float]) -> Tuple[float, float]:
    """Arithmetic mean and sample standard deviation / sqrt(R); STE of one value is 0."""
    values = np.asarray(accuracies, dtype=np.float64)
    if values.size == 0:
        raise ValueError("no accuracies to summarize")
    mean = float(values.mean())
    if values.size == 1:
        return mean, 0.0
    return mean, float(values.std(ddof=1) / np.sqrt(values.size))


@dataclass
class ExperimentReport:
    """Per-repetition recognition rates of one method, their RR and STE, and the config echo."""

    method: str
    accuracies: List[float]
    mean: float
    ste: float
    train_seconds: float = 0.0
    test_seconds: float = 0.0
    config: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_repetitions(
        cls,
        method: str,
        accuracies: Sequence[float],
        train_seconds: float = 0.0,
        test_seconds: float = 0.0,
        config: Optional[Dict[str, Any]] = None,
    ) -> "ExperimentReport":
        mean, ste = mean_and_ste(accuracies)
        return cls(
            method=method,
            accuracies=[float(a) for a in accuracies],
            mean=mean,
            ste=ste,
            train_seconds=float(train_seconds),
            test_seconds=float(test_seconds),
            config=dict(config or {}),
        )

    @property
    def repetitions(self) -> int:
        return len(self.accuracies)

    def to_dict(self) -> Dict[str, Any]:
        return {name: getattr(self, name) for name in REPORT_FIELDS}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentReport":
        missing = [name for name in REPORT_FIELDS if name not in data]
        if missing:
            raise ParseError(f"report is missing fields {missing}")
        if not isinstance(data["accuracies"], list) or not data["accuracies"]:
            raise ParseError("report accuracies must be a non-empty list")
        try:
            return cls(
                method=str(data["method"]),
                accuracies=[float(a) for a in data["accuracies"]],
                mean=float(data["mean"]),
                ste=float(data["ste"]),
                train_seconds=float(data["train_seconds"]),
                test_seconds=float(data["test_seconds"]),
                config=dict(data["config"]),
            )
        except (TypeError, ValueError) as e:
            raise ParseError(f"malformed report: {e}") from e


@dataclass
class SweepReport:
    """
    Recognition rate against projection dimension t.

    ``accuracies[i][r]`` is the accuracy at ``t_values[i]`` in repetition r.
    """

    method: str
    t_values: List[int]
    accuracies: List[List[float]]
    config: Dict[str, Any] = field(default_factory=dict)

    @property
    def means(self) -> List[float]:
        return [mean_and_ste(row)[0] for row in self.accuracies]

    @property
    def stes(self) -> List[float]:
        return [mean_and_ste(row)[1] for row in self.accuracies]

    def best_t(self) -> int:
        """Smallest t reaching the highest mean recognition rate."""
        means = self.means
        return self.t_values[int(np.argmax(means))]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "method": self.method,
            "t_values": list(self.t_values),
            "accuracies": [list(row) for row in self.accuracies],
            "means": self.means,
            "stes": self.stes,
            "config": self.config,
        }
