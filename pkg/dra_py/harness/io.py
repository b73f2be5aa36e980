"""Feature CSV ingestion and report emission."""

import json
import logging
import math
import re
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from ..errors import InconsistentDimension, InvalidInput, IoError, ParseError
from ..sets import FeaturePools
from .models import ExperimentReport, SweepReport

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

FORMATS = ("json", "csv")
FLOAT_FORMAT = "%.17g"
HINT_COLUMN = "set_hint"
CLASS_COLUMN = "class_id"

_FEATURE = re.compile(r"^f(\d+)$")
_PARSER_LINE = re.compile(r"line (\d+)")


def _check_header(columns: Sequence[str]) -> List[str]:
    """Validate ``[set_hint,] class_id, f0, ..., f{d-1}``; return the feature columns."""
    columns = [c.strip() for c in columns]
    start = 1 if columns and columns[0] == HINT_COLUMN else 0
    if len(columns) <= start or columns[start] != CLASS_COLUMN:
        raise ParseError(f"header must start with [{HINT_COLUMN},]{CLASS_COLUMN}", line=1)
    features = columns[start + 1 :]
    if not features:
        raise ParseError("header names no feature columns", line=1)
    for j, name in enumerate(features):
        match = _FEATURE.match(name)
        if match is None or int(match.group(1)) != j:
            raise ParseError(f"feature column {j} is named {name!r}, expected 'f{j}'", line=1)
    return features


def load_dataset(path: PathLike) -> FeaturePools:
    """
    Read a feature CSV into per-class pools.

    Class ids are remapped to 0..c-1 in ascending order of the file's ids; the
    original ids are kept in ``FeaturePools.names``. Line numbers in errors
    count the header as line 1.
    """
    try:
        table = pd.read_csv(
            path, header=None, dtype=str, keep_default_na=False, skipinitialspace=True
        )
    except pd.errors.EmptyDataError as e:
        raise ParseError("no samples") from e
    except pd.errors.ParserError as e:
        match = _PARSER_LINE.search(str(e))
        raise InconsistentDimension(
            "row has more fields than the header", line=int(match.group(1)) if match else 0
        ) from e
    except OSError as e:
        raise IoError(f"cannot read dataset {path}: {e}") from e

    # row 0 is the header and fixes the field count of every later row
    header = [str(c).strip() for c in table.iloc[0].fillna("")]
    features = _check_header(header)
    frame = table.iloc[1:].reset_index(drop=True)
    frame.columns = header
    if frame.empty:
        raise ParseError("no samples")

    incomplete = frame[features + [CLASS_COLUMN]].isna().any(axis=1).to_numpy()
    if incomplete.any():
        row = int(np.argmax(incomplete))
        raise InconsistentDimension(
            f"row has fewer than {len(features)} features", line=row + 2
        )

    values = frame[features].apply(pd.to_numeric, errors="coerce").to_numpy(dtype=np.float64)
    bad = ~np.isfinite(values)
    if bad.any():
        row, col = (int(i) for i in np.argwhere(bad)[0])
        raise ParseError(
            f"value {frame[features[col]].iloc[row]!r} in {features[col]} is not a finite number",
            line=row + 2,
        )

    raw_ids = pd.to_numeric(frame[CLASS_COLUMN], errors="coerce").to_numpy(dtype=np.float64)
    bad_ids = ~np.isfinite(raw_ids) | (raw_ids != np.round(raw_ids))
    if bad_ids.any():
        row = int(np.argmax(bad_ids))
        raise ParseError(
            f"class id {frame[CLASS_COLUMN].iloc[row]!r} is not an integer", line=row + 2
        )
    ids = raw_ids.astype(np.int64)
    if HINT_COLUMN in frame.columns:
        hints = [str(h).strip() for h in frame[HINT_COLUMN].fillna("")]
    else:
        hints = [""] * len(frame)

    pools: Dict[int, np.ndarray] = {}
    pool_hints: Dict[int, List[str]] = {}
    names: Dict[int, str] = {}
    for position, original in enumerate(np.unique(ids)):
        rows = np.flatnonzero(ids == original)
        pools[position] = values[rows].T.copy()
        pool_hints[position] = [hints[r] for r in rows]
        names[position] = str(int(original))
    logger.debug(
        "loaded %d samples in %d classes (d=%d) from %s",
        len(frame),
        len(pools),
        len(features),
        path,
    )
    return FeaturePools(pools=pools, hints=pool_hints, names=names)


def save_dataset(pools: FeaturePools, path: PathLike) -> None:
    """Write pools in the feature CSV format, floats at 17 significant digits."""
    blocks = []
    for k in pools.class_ids():
        block = pd.DataFrame(pools.pools[k].T, columns=[f"f{j}" for j in range(pools.d)])
        block.insert(0, CLASS_COLUMN, pools.names[k])
        block.insert(0, HINT_COLUMN, pools.hints[k])
        blocks.append(block)
    frame = pd.concat(blocks, ignore_index=True)
    _write(lambda f: frame.to_csv(f, index=False, float_format=FLOAT_FORMAT), path)


def _write(writer, path: Optional[PathLike]) -> None:
    if path is None or str(path) == "":
        raise IoError("output path is empty")
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer(f)
    except OSError as e:
        raise IoError(f"cannot write {path}: {e}") from e


def _check_format(fmt: str) -> None:
    if fmt not in FORMATS:
        raise InvalidInput(f"unknown output format {fmt!r}; expected one of {FORMATS}")


def report_frame(report: ExperimentReport) -> pd.DataFrame:
    """One row per repetition followed by the ``mean`` and ``ste`` summary rows."""
    rows = [str(r) for r in range(report.repetitions)] + ["mean", "ste"]
    return pd.DataFrame(
        {
            "method": [report.method] * len(rows),
            "repetition": rows,
            "accuracy": list(report.accuracies) + [report.mean, report.ste],
        }
    )


def _json_float(value: float) -> str:
    if not math.isfinite(value):
        return json.dumps(value)
    text = FLOAT_FORMAT % value
    return text if "." in text or "e" in text else text + ".0"


def _to_json(value: Any, level: int = 0) -> str:
    """Indented JSON text with floats at 17 significant digits."""
    if isinstance(value, float):
        return _json_float(value)
    pad = "  " * (level + 1)
    close = "  " * level
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f"{pad}{json.dumps(str(k))}: {_to_json(v, level + 1)}" for k, v in value.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [pad + _to_json(v, level + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + close + "]"
    return json.dumps(value)


def emit_report(report: ExperimentReport, fmt: str, path: Optional[PathLike]) -> None:
    """
    Write a report as JSON (fields in declaration order) or CSV (R repetition
    rows plus summary rows). Floats are written at 17 significant digits.
    """
    _check_format(fmt)
    if fmt == "json":
        _write(lambda f: f.write(_to_json(report.to_dict()) + "\n"), path)
    else:
        frame = report_frame(report)
        _write(lambda f: frame.to_csv(f, index=False, float_format=FLOAT_FORMAT), path)


def emit_sweep(sweep: SweepReport, fmt: str, path: Optional[PathLike]) -> None:
    _check_format(fmt)
    if fmt == "json":
        _write(lambda f: f.write(_to_json(sweep.to_dict()) + "\n"), path)
    else:
        frame = pd.DataFrame({"t": sweep.t_values, "mean": sweep.means, "ste": sweep.stes})
        _write(lambda f: frame.to_csv(f, index=False, float_format=FLOAT_FORMAT), path)


def load_report(path: PathLike) -> ExperimentReport:
    """Parse a JSON report written by ``emit_report``."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON ({e.msg})", line=e.lineno) from e
    except OSError as e:
        raise IoError(f"cannot read report {path}: {e}") from e
    if not isinstance(data, dict):
        raise ParseError(f"{path}: report must be a JSON object")
    return ExperimentReport.from_dict(data)


def aggregate_reports(reports: Sequence[ExperimentReport]) -> ExperimentReport:
    """
    Concatenate the repetitions of several reports of one method and
    recompute mean and STE. Timings add up; the first report's config is kept.
    """
    if not reports:
        raise InvalidInput("no reports to aggregate")
    methods = sorted({r.method for r in reports})
    if len(methods) != 1:
        raise InvalidInput(f"cannot aggregate different methods: {methods}")
    accuracies = [a for r in reports for a in r.accuracies]
    return ExperimentReport.from_repetitions(
        method=methods[0],
        accuracies=accuracies,
        train_seconds=sum(r.train_seconds for r in reports),
        test_seconds=sum(r.test_seconds for r in reports),
        config=reports[0].config,
    )
