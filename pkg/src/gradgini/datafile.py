"""CSV readers and writers for the command line.

Microdata files hold one income per line. Grouped files hold ``count,mean``
per line. Either may start with a single header line, recognised by a
first field that does not parse as a number. Decimal separator is ``.``.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import numpy as np

from .estimators import GroupedData, LorenzCurve

__all__ = ["InputFormatError", "read_incomes", "read_grouped", "write_lorenz", "format_sig"]


class InputFormatError(ValueError):
    """A data row could not be parsed; ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _is_number(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def _rows(path: Path):
    # raises OSError for unreadable files; callers map that to their own exit code
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    first_data = True
    for lineno, row in enumerate(rows, start=1):
        fields = [f.strip() for f in row]
        if not fields or all(f == "" for f in fields):
            continue
        if first_data:
            first_data = False
            if not _is_number(fields[0]):
                continue
        yield lineno, fields


def _parse_income(token: str, lineno: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise InputFormatError(lineno, f"not a number: {token!r}") from None
    if not math.isfinite(value) or value < 0:
        raise InputFormatError(lineno, f"income must be finite and >= 0, got {token!r}")
    return value


def read_incomes(path: str | Path) -> np.ndarray:
    values = []
    for lineno, fields in _rows(Path(path)):
        if len(fields) != 1:
            raise InputFormatError(lineno, f"expected one income per line, got {len(fields)} fields")
        values.append(_parse_income(fields[0], lineno))
    return np.asarray(values, dtype=np.float64)


def read_grouped(path: str | Path) -> GroupedData:
    counts, means = [], []
    for lineno, fields in _rows(Path(path)):
        if len(fields) != 2:
            raise InputFormatError(lineno, f"expected 'count,mean', got {len(fields)} fields")
        try:
            count = int(fields[0])
        except ValueError:
            raise InputFormatError(lineno, f"count must be an integer, got {fields[0]!r}") from None
        if count < 0:
            raise InputFormatError(lineno, f"count must be >= 0, got {count}")
        mean = _parse_income(fields[1], lineno)
        if means and mean < means[-1]:
            raise InputFormatError(lineno, "bin means must be ascending")
        counts.append(count)
        means.append(mean)
    return GroupedData(tuple(counts), tuple(means))


def format_sig(value: float, digits: int = 12) -> str:
    return format(value, f".{digits}g")


def write_lorenz(curve: LorenzCurve, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["p", "L"])
        for p, s in curve.points():
            writer.writerow([format_sig(p), format_sig(s)])
