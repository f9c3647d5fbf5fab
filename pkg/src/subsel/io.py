"""Candidate-file ingestion and emission.

CSV: one point per row, m numeric columns, optional single header row.
JSON: an array of arrays.  Values are written with 17 significant digits so a
read-back reproduces the exact doubles.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

__all__ = ["read_points", "write_points", "format_value"]


def format_value(x: float) -> str:
    return f"{x:.17g}"


def _read_csv(path: Path) -> np.ndarray:
    rows: list[list[float]] = []
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        for lineno, row in enumerate(reader):
            cells = [c.strip() for c in row if c.strip() != ""]
            if not cells:
                continue
            try:
                rows.append([float(c) for c in cells])
            except ValueError:
                if lineno == 0:
                    continue  # header row
                raise ValueError(f"{path}: non-numeric value on line {lineno + 1}")
    if not rows:
        raise ValueError(f"{path}: no data rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError(f"{path}: inconsistent column count")
    return np.asarray(rows, dtype=np.float64)


def _read_json(path: Path) -> np.ndarray:
    with path.open() as fh:
        data = json.load(fh)
    arr = np.asarray(data, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"{path}: expected an array of arrays")
    return arr


def read_points(path: str | Path) -> np.ndarray:
    """Load an (n, m) point array from a .csv or .json file."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        return _read_json(path)
    return _read_csv(path)


def write_points(path: str | Path, points: np.ndarray, header: list[str] | None = None) -> None:
    """Write points in the same format the readers accept."""
    path = Path(path)
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if path.suffix.lower() == ".json":
        body = ",\n".join("  [" + ", ".join(format_value(x) for x in row) + "]" for row in pts)
        path.write_text("[\n" + body + "\n]\n")
        return
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if header is not None:
            writer.writerow(header)
        for row in pts:
            writer.writerow([format_value(x) for x in row])
