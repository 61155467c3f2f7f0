"""CSV ingest and export for bivariate datasets."""

import csv
import io
import logging
import math
from pathlib import Path
from typing import List, Optional, Sequence, TextIO, Tuple, Union

import numpy as np

from .. import config
from ..errors import MissingColumn, NonNumericCell, TooFewRows
from .models import Dataset

logger = logging.getLogger(__name__)

ColumnSelector = Union[int, str]


def parse_csv(text: Union[str, TextIO], x_column: ColumnSelector = 0,
              y_column: ColumnSelector = 1) -> Dataset:
    """
    Parse two numeric columns of a CSV document into a Dataset.

    A header row is recognised when the selected cells of the first row do
    not parse as numbers, or when a column is selected by name.

    Args:
        text: CSV text or an open text stream
        x_column: Column name or 0-based index for x
        y_column: Column name or 0-based index for y

    Returns:
        Dataset with rows in file order
    """
    if not isinstance(text, str):
        text = text.read()

    rows = [row for row in csv.reader(io.StringIO(text)) if any(cell.strip() for cell in row)]
    if not rows:
        raise TooFewRows("CSV contains no rows", module="dataset", context={"rows": 0})

    header = _detect_header(rows[0], x_column, y_column)
    x_index = _resolve_column(x_column, header, rows[0])
    y_index = _resolve_column(y_column, header, rows[0])
    body = rows[1:] if header is not None else rows

    points = []
    for row_number, row in enumerate(body, start=1):
        x = _parse_cell(row, x_index, row_number, _column_label(x_index, header))
        y = _parse_cell(row, y_index, row_number, _column_label(y_index, header))
        points.append((x, y))

    if len(points) < config.MIN_POINTS:
        raise TooFewRows(
            f"need at least {config.MIN_POINTS} observations, got {len(points)}",
            module="dataset",
            context={"rows": len(points)},
        )

    logger.debug("Parsed %d observations (header=%s)", len(points), header is not None)
    return Dataset(np.array(points, dtype=float))


def load_csv(path: Union[str, Path], x_column: ColumnSelector = 0,
             y_column: ColumnSelector = 1) -> Dataset:
    """Read a UTF-8 CSV file and parse it with parse_csv."""
    with open(path, "r", encoding="utf-8", newline="") as f:
        return parse_csv(f, x_column, y_column)


def to_csv(dataset: Dataset, header: Optional[Tuple[str, str]] = ("x", "y")) -> str:
    """
    Render a Dataset as CSV with 17 significant digits per coordinate.

    Args:
        dataset: Dataset to render
        header: Column names, or None for no header row

    Returns:
        CSV text that parse_csv reads back bit-exactly
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    if header is not None:
        writer.writerow(header)
    for x, y in dataset.points:
        writer.writerow([format(float(x), ".17g"), format(float(y), ".17g")])
    return out.getvalue()


def _is_number(cell: str) -> bool:
    try:
        float(cell.strip())
        return True
    except ValueError:
        return False


def _detect_header(first_row: List[str], x_column: ColumnSelector,
                   y_column: ColumnSelector) -> Optional[List[str]]:
    """Return the header row, or None when the first row is data."""
    names = [cell.strip() for cell in first_row]
    for column in (x_column, y_column):
        if isinstance(column, str) and not column.strip().isdigit():
            return names

    for column in (x_column, y_column):
        index = int(column)
        if index < len(first_row) and not _is_number(first_row[index]):
            return names
    return None


def _resolve_column(column: ColumnSelector, header: Optional[Sequence[str]],
                    first_row: Sequence[str]) -> int:
    """Turn a column name or index into a 0-based index."""
    if isinstance(column, str):
        name = column.strip()
        if header is not None and name in header:
            return list(header).index(name)
        if not name.isdigit():
            raise MissingColumn(
                f"column {name!r} not found in header",
                module="dataset",
                context={"column": name, "header": list(header or [])},
            )
        column = int(name)

    if column < 0 or column >= len(first_row):
        raise MissingColumn(
            f"column index {column} out of range for {len(first_row)} columns",
            module="dataset",
            context={"column": column},
        )
    return column


def _column_label(index: int, header: Optional[Sequence[str]]):
    if header is not None and index < len(header):
        return header[index]
    return index


def _parse_cell(row: Sequence[str], index: int, row_number: int, label) -> float:
    """Parse one selected cell as a finite float."""
    if index >= len(row):
        raise MissingColumn(
            f"row {row_number} has no column {label}",
            module="dataset",
            context={"row": row_number, "column": label},
        )

    cell = row[index].strip()
    try:
        value = float(cell)
    except ValueError:
        value = math.nan

    if not math.isfinite(value):
        raise NonNumericCell(
            f"non-numeric value {cell!r} at row {row_number}, column {label}",
            module="dataset",
            context={"row": row_number, "column": label, "value": cell},
        )
    return value
