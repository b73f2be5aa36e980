"""Command-line interface for dra_py."""

import functools
import logging
from dataclasses import replace
from pathlib import Path
from typing import Optional, Tuple

import click
import numpy as np
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.progress import BarColumn, Progress, TextColumn

from . import __version__
from .config import DatasetSource, ExperimentConfig, LocalConfig
from .errors import ClassMismatch, DraError
from .harness import (
    FORMATS,
    ExperimentReport,
    aggregate_reports,
    emit_report,
    emit_sweep,
    fit_method,
    load_dataset,
    load_pools,
    load_report,
    parse_method,
    predict,
    run_experiment,
    save_dataset,
    sweep_dimension,
)
from .sets import Dataset, ImageSet, pools_as_dataset
from .utils.parallel import resolve_threads
from .utils.terminal import create_table, format_accuracy, format_ratio

console = Console()
err_console = Console(stderr=True)


def handle_errors(command):
    """Print library errors in red and exit with their code."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except DraError as e:
            err_console.print(f"[red]Error: {escape(str(e))}[/red]")
            raise SystemExit(e.exit_code)

    return wrapper


def _local() -> LocalConfig:
    return LocalConfig.load() or LocalConfig()


def _load_config(path: Path, seed: Optional[int], local: LocalConfig) -> ExperimentConfig:
    cfg = ExperimentConfig.load(path, defaults={"eig_backend": local.eig_backend})
    if seed is not None:
        cfg = replace(cfg, seed=seed)
    return cfg


def _progress() -> Progress:
    return Progress(
        TextColumn("[cyan]{task.description}"),
        BarColumn(),
        TextColumn("{task.completed}/{task.total}"),
        console=err_console,
        transient=True,
    )


def _print_report(report: ExperimentReport) -> None:
    table = create_table(f"{report.method} ({report.repetitions} repetitions)", ["", "Value"])
    table.add_row("RR", format_accuracy(report.mean))
    table.add_row("STE", f"{100.0 * report.ste:.2f}")
    table.add_row("Training time", f"{report.train_seconds:.2f}s")
    table.add_row("Test time", f"{report.test_seconds:.2f}s")
    console.print(table)


config_option = click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
    help="Experiment config (JSON)",
)
seed_option = click.option("--seed", type=int, default=None, help="Override the config seed")
out_option = click.option("--out", type=click.Path(path_type=Path), help="Output file path")
format_option = click.option(
    "--format", "fmt", type=click.Choice(FORMATS), default=None, help="Output format"
)
threads_option = click.option(
    "--threads", type=int, default=None, help="Worker threads (0 = one per CPU)"
)


@click.group()
@click.version_option(version=__version__)
@click.option("--debug", is_flag=True, help="Show debug logging")
def cli(debug: bool):
    """dra_py - discriminant residual analysis for image-set classification."""
    logging.basicConfig(
        level=logging.DEBUG if debug else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


@cli.command()
@click.option("--config", "config_path", type=click.Path(exists=True, path_type=Path))
@seed_option
@click.option("--out", type=click.Path(path_type=Path), required=True, help="Output CSV path")
@click.option("-c", "--classes", type=int, default=None, help="Number of classes")
@click.option("-d", "--dimension", type=int, default=None, help="Feature dimension")
@click.option("--samples-per-class", type=int, default=None)
@click.option("--variation-rank", type=int, default=None)
@click.option("--noise-sigma", type=float, default=None)
@click.option("--class-sep", type=float, default=None)
@handle_errors
def synth(
    config_path: Optional[Path],
    seed: Optional[int],
    out: Path,
    classes: Optional[int],
    dimension: Optional[int],
    samples_per_class: Optional[int],
    variation_rank: Optional[int],
    noise_sigma: Optional[float],
    class_sep: Optional[float],
):
    """Write a synthetic dataset CSV."""
    source = ExperimentConfig.load(config_path).dataset if config_path else DatasetSource()
    overrides = {
        "seed": seed,
        "c": classes,
        "d": dimension,
        "samples_per_class": samples_per_class,
        "variation_rank": variation_rank,
        "noise_sigma": noise_sigma,
        "class_sep": class_sep,
    }
    source = replace(source, kind="synth", **{k: v for k, v in overrides.items() if v is not None})
    with console.status("[cyan]Generating samples...[/cyan]"):
        pools = load_pools(source)
        save_dataset(pools, out)
    console.print(
        f"[green]Wrote {source.c} classes x {source.samples_per_class} samples "
        f"(d={source.d}) to {out}[/green]"
    )


@cli.command()
@config_option
@seed_option
@out_option
@format_option
@threads_option
@handle_errors
def run(
    config_path: Path,
    seed: Optional[int],
    out: Optional[Path],
    fmt: Optional[str],
    threads: Optional[int],
):
    """Run an experiment config and emit its report."""
    local = _local()
    cfg = _load_config(config_path, seed, local)
    threads = resolve_threads(local.threads if threads is None else threads)

    with _progress() as progress:
        task = progress.add_task(cfg.method, total=cfg.repetitions)
        report = run_experiment(
            cfg, threads=threads, on_done=lambda _: progress.advance(task)
        )

    _print_report(report)
    if out is not None:
        emit_report(report, fmt or local.format, out)
        console.print(f"[green]Report saved to {out}[/green]")


@cli.command()
@config_option
@seed_option
@out_option
@format_option
@threads_option
@click.option(
    "-t", "t_values", type=int, multiple=True, required=True, help="Projection dimension (repeat)"
)
@handle_errors
def sweep(
    config_path: Path,
    seed: Optional[int],
    out: Optional[Path],
    fmt: Optional[str],
    threads: Optional[int],
    t_values: Tuple[int, ...],
):
    """Recognition rate as a function of the projection dimension."""
    local = _local()
    cfg = _load_config(config_path, seed, local)
    threads = resolve_threads(local.threads if threads is None else threads)

    with _progress() as progress:
        task = progress.add_task(f"{cfg.method} sweep", total=cfg.repetitions)
        result = sweep_dimension(
            cfg, t_values, threads=threads, on_done=lambda _: progress.advance(task)
        )

    table = create_table(f"{result.method}: RR against t", ["t", "RR", "STE"])
    best = result.best_t()
    for t, mean, ste in zip(result.t_values, result.means, result.stes):
        marker = " *" if t == best else ""
        table.add_row(f"{t}{marker}", format_accuracy(mean), f"{100.0 * ste:.2f}")
    console.print(table)
    if out is not None:
        emit_sweep(result, fmt or local.format, out)
        console.print(f"[green]Sweep saved to {out}[/green]")


def _probe_set(path: Path) -> ImageSet:
    """Every row of the probe file, in file order per class, as one set."""
    pools = load_dataset(path)
    samples = np.hstack([pools.pools[k] for k in pools.class_ids()])
    return ImageSet(class_id=0, samples=samples)


@cli.command()
@click.option(
    "--train-dir",
    type=click.Path(exists=True, file_okay=False, path_type=Path),
    required=True,
    help="Directory holding train.csv and valid.csv",
)
@click.option(
    "--probe", type=click.Path(exists=True, dir_okay=False, path_type=Path), required=True
)
@click.option("--config", "config_path", type=click.Path(exists=True, path_type=Path))
@threads_option
@handle_errors
def classify(
    train_dir: Path, probe: Path, config_path: Optional[Path], threads: Optional[int]
):
    """Classify a probe set against a training directory."""
    local = _local()
    if config_path is not None:
        cfg = _load_config(config_path, None, local)
    else:
        cfg = ExperimentConfig(eig_backend=local.eig_backend)
    threads = resolve_threads(local.threads if threads is None else threads)
    spec = parse_method(cfg.method)

    train_pools = load_dataset(train_dir / "train.csv")
    valid_pools = load_dataset(train_dir / "valid.csv")
    names = [train_pools.names[k] for k in train_pools.class_ids()]
    if names != [valid_pools.names[k] for k in valid_pools.class_ids()]:
        raise ClassMismatch("train.csv and valid.csv list different classes")
    train: Dataset = pools_as_dataset(train_pools)
    valid: Dataset = pools_as_dataset(valid_pools)
    probe_set = _probe_set(probe)
    if cfg.anchor == "first":
        train, valid = train.with_anchor_first(), valid.with_anchor_first()
        probe_set = probe_set.with_anchor_first()

    with console.status(f"[cyan]Running {spec.name}...[/cyan]"):
        model = fit_method(cfg, spec, train, valid)
        label, distances = predict(cfg, spec, model, train, probe_set, threads)

    table = create_table(f"{spec.name} decision distances", ["Class", "Distance"])
    for k, value in enumerate(distances):
        table.add_row(names[k], format_ratio(float(value), best=k == label))
    console.print(table)
    console.print(f"[bold cyan]Predicted class:[/bold cyan] [green]{names[label]}[/green]")


@cli.command()
@click.argument(
    "reports", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path)
)
@out_option
@format_option
@handle_errors
def report(reports: Tuple[Path, ...], out: Optional[Path], fmt: Optional[str]):
    """Re-aggregate the repetitions of saved JSON reports."""
    local = _local()
    combined = aggregate_reports([load_report(path) for path in reports])
    _print_report(combined)
    if out is not None:
        emit_report(combined, fmt or local.format, out)
        console.print(f"[green]Report saved to {out}[/green]")


@cli.command()
def version():
    """Show version information."""
    console.print(f"[bold cyan]dra_py[/bold cyan] version [green]{__version__}[/green]")
    console.print("Discriminant residual analysis for image-set classification")


def main():
    """Main entry point."""
    cli()


if __name__ == "__main__":
    main()
