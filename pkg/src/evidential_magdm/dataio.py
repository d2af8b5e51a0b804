"""CSV and JSON file interchange.

Decision matrices travel as one CSV per expert: the first row names the
attributes (first cell is a corner label and is ignored), every other
row is an alternative label followed by its scores, and the expert id is
the file stem. Feature sources are plain numeric CSVs with a header, one
row per sample, with an optional trailing ``label`` column. All writes
go through a temp file in the target directory followed by an atomic
rename.
"""

from __future__ import annotations

import csv
import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import ConfigError, CsvFormatError
from .fusion import FeatureSet
from .linguistic import DecisionMatrix


def _read_rows(path: Path) -> list[list[str]]:
    try:
        with open(path, newline="") as handle:
            return [row for row in csv.reader(handle)]
    except OSError as exc:
        raise CsvFormatError(f"cannot read {path}: {exc}") from exc


def _parse_cell(text: str, path: Path, line: int, column: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise CsvFormatError(
            f"{path}:{line}:{column}: expected a number, got {text!r}"
        ) from None


def read_decision_matrix(path: str | Path) -> DecisionMatrix:
    path = Path(path)
    rows = _read_rows(path)
    if len(rows) < 3:
        raise CsvFormatError(f"{path}: need a header and at least 2 alternatives")
    header = rows[0]
    if len(header) < 2:
        raise CsvFormatError(f"{path}:1: header must name at least one attribute")
    attributes = tuple(cell.strip() for cell in header[1:])
    labels = []
    values = []
    for line_no, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise CsvFormatError(
                f"{path}:{line_no}: row has {len(row)} cells, header has {len(header)}"
            )
        labels.append(row[0].strip())
        values.append(
            [_parse_cell(cell, path, line_no, col) for col, cell in enumerate(row[1:], start=2)]
        )
    return DecisionMatrix(path.stem, np.asarray(values), tuple(labels), attributes)


def write_decision_matrix(path: str | Path, matrix: DecisionMatrix) -> None:
    lines = ["alternative," + ",".join(matrix.attribute_labels)]
    for label, row in zip(matrix.alternative_labels, matrix.values):
        lines.append(label + "," + ",".join(f"{v:.17g}" for v in row))
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_feature_source(path: str | Path, source_id: str | None = None) -> FeatureSet:
    path = Path(path)
    rows = _read_rows(path)
    if len(rows) < 2:
        raise CsvFormatError(f"{path}: need a header and at least one sample")
    header = [cell.strip() for cell in rows[0]]
    has_labels = bool(header) and header[-1].lower() == "label"
    width = len(header)
    n_features = width - 1 if has_labels else width
    if n_features < 1:
        raise CsvFormatError(f"{path}:1: no feature columns")
    features = []
    labels = []
    for line_no, row in enumerate(rows[1:], start=2):
        if len(row) != width:
            raise CsvFormatError(
                f"{path}:{line_no}: row has {len(row)} cells, header has {width}"
            )
        features.append(
            [_parse_cell(cell, path, line_no, col) for col, cell in enumerate(row[:n_features], start=1)]
        )
        if has_labels:
            labels.append(int(_parse_cell(row[-1], path, line_no, width)))
    return FeatureSet(
        source_id or path.stem,
        np.asarray(features),
        np.asarray(labels) if has_labels else None,
    )


def write_feature_source(path: str | Path, source: FeatureSet) -> None:
    header = [f"f{j}" for j in range(source.n_dims)]
    if source.labels is not None:
        header.append("label")
    lines = [",".join(header)]
    for i in range(source.n_samples):
        cells = [f"{v:.17g}" for v in source.features[i]]
        if source.labels is not None:
            cells.append(str(int(source.labels[i])))
        lines.append(",".join(cells))
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_term_values(path: str | Path, expert_id: str, values, alternative_labels,
                      attribute_labels) -> None:
    """Long-format dump of a (p, q, terms) tensor for golden-test diffing."""
    arr = np.asarray(values)
    lines = ["alt,attr,term,value"]
    p, q, terms = arr.shape
    for i in range(p):
        for j in range(q):
            for f in range(terms):
                lines.append(
                    f"{alternative_labels[i]},{attribute_labels[j]},{f + 1},"
                    f"{arr[i, j, f]:.17g}"
                )
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_manifest(path: str | Path) -> tuple[list[dict], dict]:
    """Feature-fusion manifest: {"sources": [{"id", "path"}...], "config": {...}}."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read manifest {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"manifest {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or "sources" not in data:
        raise ConfigError(f"manifest {path} must be an object with a 'sources' list")
    sources = data["sources"]
    if not isinstance(sources, list) or not sources:
        raise ConfigError(f"manifest {path}: 'sources' must be a nonempty list")
    resolved = []
    for entry in sources:
        if not isinstance(entry, dict) or "path" not in entry:
            raise ConfigError(f"manifest {path}: each source needs a 'path'")
        source_path = Path(entry["path"])
        if not source_path.is_absolute():
            source_path = path.parent / source_path
        resolved.append({"id": entry.get("id"), "path": source_path})
    config = data.get("config", {})
    if not isinstance(config, dict):
        raise ConfigError(f"manifest {path}: 'config' must be an object")
    return resolved, config


def atomic_write_text(path: str | Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
