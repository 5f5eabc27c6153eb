"""Readers for the analysis CSV files, with loud schema validation.

Layouts accepted here:

- ranks/PORS tables: header ``bchm,<mutation>|<crossover>,...``, one row per
  boundary handling method, float cells.
- marks tables: header ``mutation,crossover,bchm,mark`` with mark in
  {best, worse}.
- ECDF curves: header ``evals_over_n,proportion`` with positive x and
  proportions in [0, 1].

Every validation failure raises SchemaError naming the file and the
offending row/column, so a mismatched producer is diagnosed from the
message alone.
"""

import csv
from pathlib import Path
from typing import NamedTuple

import numpy as np

MARK_VALUES = ("best", "worse")


class SchemaError(ValueError):
    """A CSV file does not match its documented layout."""


class RankGrid(NamedTuple):
    """A ranks (or PORS) table: methods x operator cells."""

    bchms: tuple[str, ...]
    cells: tuple[tuple[str, str], ...]  # (mutation, crossover) per column
    values: np.ndarray  # shape (len(bchms), len(cells))


def _rows(path: Path) -> list[list[str]]:
    try:
        with open(path, newline="") as fh:
            rows = [row for row in csv.reader(fh) if row]
    except OSError as err:
        raise SchemaError(f"{path}: {err}") from err
    if not rows:
        raise SchemaError(f"{path}: file is empty")
    return rows


def _split_cell(label: str, path: Path, column: int) -> tuple[str, str]:
    parts = label.split("|")
    if len(parts) != 2 or not parts[0] or not parts[1]:
        raise SchemaError(
            f"{path}: header column {column} is {label!r}, "
            "expected '<mutation>|<crossover>'"
        )
    return parts[0], parts[1]


def read_ranks(path) -> RankGrid:
    """Read a ranks or PORS table into a method-by-cell grid."""
    path = Path(path)
    header, *body = _rows(path)
    if not header or header[0] != "bchm":
        raise SchemaError(
            f"{path}: header column 1 is {header[0] if header else ''!r}, "
            "expected 'bchm'"
        )
    if len(header) < 2:
        raise SchemaError(f"{path}: header has no operator cell columns")
    cells = tuple(
        _split_cell(label, path, col)
        for col, label in enumerate(header[1:], start=2)
    )
    if len(set(cells)) != len(cells):
        raise SchemaError(f"{path}: duplicate operator cell columns")
    if not body:
        raise SchemaError(f"{path}: no method rows")

    bchms: list[str] = []
    values = np.empty((len(body), len(cells)))
    for r, row in enumerate(body, start=2):
        if len(row) != len(header):
            raise SchemaError(
                f"{path}: row {r} has {len(row)} fields, "
                f"expected {len(header)}"
            )
        if row[0] in bchms:
            raise SchemaError(f"{path}: row {r} repeats method {row[0]!r}")
        bchms.append(row[0])
        for c, field in enumerate(row[1:], start=2):
            try:
                values[r - 2, c - 2] = float(field)
            except ValueError:
                raise SchemaError(
                    f"{path}: row {r}, column {c}: {field!r} is not a number"
                ) from None
    return RankGrid(tuple(bchms), cells, values)


def read_marks(path) -> dict[tuple[str, str, str], str]:
    """Read best/worse marks keyed by (mutation, crossover, bchm)."""
    path = Path(path)
    header, *body = _rows(path)
    expected = ["mutation", "crossover", "bchm", "mark"]
    if header != expected:
        raise SchemaError(
            f"{path}: header is {','.join(header)!r}, "
            f"expected {','.join(expected)!r}"
        )
    marks: dict[tuple[str, str, str], str] = {}
    for r, row in enumerate(body, start=2):
        if len(row) != 4:
            raise SchemaError(
                f"{path}: row {r} has {len(row)} fields, expected 4"
            )
        mutation, cross, bchm, mark = row
        if mark not in MARK_VALUES:
            raise SchemaError(
                f"{path}: row {r}: mark {mark!r} not in "
                f"{'/'.join(MARK_VALUES)}"
            )
        key = (mutation, cross, bchm)
        if key in marks:
            raise SchemaError(f"{path}: row {r} repeats {key}")
        marks[key] = mark
    return marks


def read_ecdf(path) -> np.ndarray:
    """Read one ECDF curve as a (k, 2) array of (evals/n, proportion).

    A header-only file is a valid curve: no (run, target) pair was ever
    solved for that operator cell, so k = 0.
    """
    path = Path(path)
    header, *body = _rows(path)
    if header != ["evals_over_n", "proportion"]:
        raise SchemaError(
            f"{path}: header is {','.join(header)!r}, "
            "expected 'evals_over_n,proportion'"
        )
    points = np.empty((len(body), 2))
    for r, row in enumerate(body, start=2):
        if len(row) != 2:
            raise SchemaError(
                f"{path}: row {r} has {len(row)} fields, expected 2"
            )
        try:
            points[r - 2] = [float(row[0]), float(row[1])]
        except ValueError:
            raise SchemaError(
                f"{path}: row {r}: {row!r} is not a number pair"
            ) from None
    if (points[:, 0] <= 0.0).any():
        raise SchemaError(f"{path}: evals_over_n values must be positive")
    if ((points[:, 1] < 0.0) | (points[:, 1] > 1.0)).any():
        raise SchemaError(f"{path}: proportions must lie in [0, 1]")
    return points
