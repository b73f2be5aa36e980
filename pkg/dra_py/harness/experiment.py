"""Repeated random-split experiments: runner and dimension sweep."""

import logging
import time
from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..dra import DraModel, dra_train, pca_dra_train, projected_ratios
from ..errors import ConfigError, DraError, NumericalError
from ..methods import MethodSpec, parse_method
from ..residual import argmin_class, class_distances, classify_ratio, classify_related_only
from ..sets import (
    Dataset,
    FeaturePools,
    ImageSet,
    UnrelatedStrategy,
    fixed_split,
    make_strategy,
    random_split,
)
from ..utils.parallel import parallel_map
from .io import load_dataset
from .models import ExperimentReport, SweepReport
from .synth import synth_generate

if TYPE_CHECKING:
    from ..config import DatasetSource, ExperimentConfig

logger = logging.getLogger(__name__)


def load_pools(source: "DatasetSource") -> FeaturePools:
    """Generate or read the sample pools named by a dataset source."""
    if source.kind == "csv":
        return load_dataset(source.path)
    return synth_generate(
        c=source.c,
        d=source.d,
        samples_per_class=source.samples_per_class,
        variation_rank=source.variation_rank,
        noise_sigma=source.noise_sigma,
        class_sep=source.class_sep,
        seed=source.seed,
        variation_scale=source.variation_scale,
    )


def _with_context(error: DraError, context: str) -> DraError:
    return type(error)(f"{context}: {error}")


def split_for(cfg: "ExperimentConfig", pools: FeaturePools, repetition: int) -> Tuple[Dataset, ...]:
    """Train/valid/test of one repetition; equal seeds give equal partitions for every method."""
    if cfg.split == "fixed":
        train, valid, test = fixed_split(pools)
    else:
        train, valid, test = random_split(pools, tuple(cfg.counts), cfg.seed + repetition)
    if cfg.anchor == "first":
        train, valid, test = (s.with_anchor_first() for s in (train, valid, test))
    return train, valid, test


def _strategy(cfg: "ExperimentConfig", spec: MethodSpec) -> UnrelatedStrategy:
    return make_strategy(spec.strategy or cfg.strategy, cfg.select_count)


def fit_method(
    cfg: "ExperimentConfig",
    spec: MethodSpec,
    train: Dataset,
    valid: Dataset,
    t: Optional[int] = None,
) -> Optional[DraModel]:
    """Train the DRA model of a method, or return None for the baselines."""
    if not spec.trains:
        return None
    strategy = _strategy(cfg, spec)
    mu = cfg.resolved_mu(spec.model) if spec.reg == "eig" else None
    t = cfg.resolved_t(train.c) if t is None else t
    options = dict(
        model=spec.model,
        reg=spec.reg,
        rho=cfg.rho,
        mu=mu,
        t=t,
        strategy=strategy,
        backend=cfg.eig_backend,
    )
    if spec.pca:
        pca, projection = pca_dra_train(train, valid, q=cfg.pca_q, **options)
        return DraModel(projection=projection, rho=cfg.rho, strategy=strategy, pca=pca)
    projection = dra_train(train, valid, **options)
    return DraModel(projection=projection, rho=cfg.rho, strategy=strategy)


def predict(
    cfg: "ExperimentConfig",
    spec: MethodSpec,
    model: Optional[DraModel],
    train: Dataset,
    probe: ImageSet,
    threads: int = 1,
) -> Tuple[int, np.ndarray]:
    """Predicted class of one probe set and its per-class decision distances."""
    if model is not None:
        return model.classify(train, probe, threads)
    dists = class_distances(train, probe, _strategy(cfg, spec), cfg.rho, threads)
    if spec.decision == "related":
        return classify_related_only(dists), np.array([d.related.distance for d in dists])
    return classify_ratio(dists), np.array([d.ratio for d in dists])


@dataclass(frozen=True)
class _Repetition:
    accuracy: float
    train_seconds: float
    test_seconds: float


def _run_repetition(
    cfg: "ExperimentConfig", spec: MethodSpec, pools: FeaturePools, repetition: int
) -> _Repetition:
    try:
        train, valid, test = split_for(cfg, pools, repetition)
        started = time.perf_counter()
        model = fit_method(cfg, spec, train, valid)
        trained = time.perf_counter()
        correct = 0
        for k in test.class_ids():
            try:
                label, _ = predict(cfg, spec, model, train, test.class_set(k))
            except DraError as e:
                raise _with_context(e, f"class {k}") from e
            correct += int(label == k)
        finished = time.perf_counter()
    except DraError as e:
        raise _with_context(e, f"repetition {repetition}") from e
    except np.linalg.LinAlgError as e:
        raise NumericalError(f"repetition {repetition}: {e}") from e
    accuracy = correct / test.c
    logger.debug("%s repetition %d: accuracy %.4f", spec.name, repetition, accuracy)
    return _Repetition(accuracy, trained - started, finished - trained)


def run_experiment(
    cfg: "ExperimentConfig",
    threads: int = 1,
    pools: Optional[FeaturePools] = None,
    on_done: Optional[Callable[[int], None]] = None,
) -> ExperimentReport:
    """
    Run ``cfg.repetitions`` repetitions and aggregate RR and STE.

    Repetition r splits with seed ``cfg.seed + r``. Repetitions run on
    ``threads`` workers; results are gathered in repetition order, so the
    accuracy list never depends on the worker count.
    """
    spec = parse_method(cfg.method)
    pools = pools if pools is not None else load_pools(cfg.dataset)
    echo = cfg.resolve(len(pools.class_ids()))

    def repeat(r: int) -> _Repetition:
        result = _run_repetition(cfg, spec, pools, r)
        if on_done is not None:
            on_done(r)
        return result

    results = parallel_map(repeat, range(cfg.repetitions), threads)
    return ExperimentReport.from_repetitions(
        method=spec.name,
        accuracies=[r.accuracy for r in results],
        train_seconds=sum(r.train_seconds for r in results),
        test_seconds=sum(r.test_seconds for r in results),
        config=echo,
    )


def sweep_dimension(
    cfg: "ExperimentConfig",
    t_values: Sequence[int],
    threads: int = 1,
    pools: Optional[FeaturePools] = None,
    on_done: Optional[Callable[[int], None]] = None,
) -> SweepReport:
    """
    Recognition rate as a function of the projection dimension t.

    Each repetition trains once at the largest t and truncates the projection,
    so every t value sees the same splits and the same residuals.
    """
    spec = parse_method(cfg.method)
    if not spec.trains:
        raise ConfigError(f"method {spec.name} has no projection to sweep")
    t_values = sorted({int(t) for t in t_values})
    if not t_values or t_values[0] < 1:
        raise ConfigError(f"t values must be positive integers, got {list(t_values)}")
    pools = pools if pools is not None else load_pools(cfg.dataset)
    echo = cfg.resolve(len(pools.class_ids()))
    echo["t"] = list(t_values)

    def repeat(r: int) -> List[float]:
        try:
            train, valid, test = split_for(cfg, pools, r)
            model = fit_method(cfg, spec, train, valid, t=t_values[-1])
            correct = np.zeros(len(t_values))
            for k in test.class_ids():
                dists = model.distances(train, test.class_set(k))
                for i, t in enumerate(t_values):
                    ratios = projected_ratios(model.projection.directions[:, :t], dists)
                    correct[i] += dists[argmin_class(ratios)].class_id == k
        except DraError as e:
            raise _with_context(e, f"repetition {r}") from e
        if on_done is not None:
            on_done(r)
        return list(correct / test.c)

    per_repetition = parallel_map(repeat, range(cfg.repetitions), threads)
    accuracies = [[float(row[i]) for row in per_repetition] for i in range(len(t_values))]
    return SweepReport(method=spec.name, t_values=t_values, accuracies=accuracies, config=echo)
