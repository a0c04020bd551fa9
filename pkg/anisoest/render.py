"""CSV and markdown rendering of case and table reports."""

from __future__ import annotations

import csv
import io
import math
from typing import Any, Dict, Iterable, List, Sequence, Tuple, Union

from .errors import InvalidParameterError
from .estimator import REPORT_COLUMNS, EstimatorReport
from .experiments import CaseReport, TableReport

FORMATS = ("csv", "md", "csv_full")
CASE_COLUMNS = ("problem", "N", "M") + REPORT_COLUMNS + ("hf_err",)
TEXT_COLUMNS = ("problem", "region")
PARAM_COLUMNS = ("a", "eps", "N", "M")

Renderable = Union[TableReport, CaseReport, EstimatorReport, Sequence[Union[CaseReport, EstimatorReport]]]


def sci3(x: float) -> str:
    """Three significant digits with a compact exponent: 1.01e-1, 2.46e+0."""
    mantissa, exponent = f"{x:.2e}".split("e")
    return f"{mantissa}e{int(exponent):+d}"


def format_cell(column: str, value: Any, full: bool = False) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    value = float(value)
    if full:
        return repr(value)
    if math.isnan(value):
        return "-"
    if column in PARAM_COLUMNS:
        return f"{value:g}"
    if column.startswith(("eff_", "ratio_")):
        return f"{value:.2f}"
    return sci3(value)


def _table_rows(report: TableReport, full: bool) -> Tuple[List[str], List[Dict[str, Any]]]:
    params = [p for p in PARAM_COLUMNS if any(p in row.params for row in report.rows)]
    value_columns = list(report.columns)
    if full:
        extra = sorted({k for row in report.rows for k in row.values} - set(value_columns))
        value_columns += extra
    rows = []
    for row in report.rows:
        cells: Dict[str, Any] = {p: row.params.get(p, math.nan) for p in params}
        cells.update({c: row.values.get(c, math.nan) for c in value_columns})
        rows.append(cells)
    return params + value_columns, rows


def to_rows(report: Renderable, full: bool = False) -> Tuple[List[str], List[Dict[str, Any]]]:
    """Column order and row dicts for any supported report."""
    if isinstance(report, TableReport):
        return _table_rows(report, full)
    items = [report] if isinstance(report, (CaseReport, EstimatorReport)) else list(report)
    if items and all(isinstance(item, EstimatorReport) for item in items):
        return list(REPORT_COLUMNS), [item.row() for item in items]
    return list(CASE_COLUMNS), [item.row() for item in items]


def _csv(columns: List[str], rows: Iterable[Dict[str, Any]], full: bool) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_cell(c, row.get(c, math.nan), full) for c in columns])
    return buf.getvalue()


def _markdown(columns: List[str], rows: Iterable[Dict[str, Any]]) -> str:
    body = [[format_cell(c, row.get(c, math.nan)) for c in columns] for row in rows]
    widths = [max([len(c)] + [len(r[k]) for r in body]) for k, c in enumerate(columns)]
    lines = [
        "| " + " | ".join(c.ljust(w) for c, w in zip(columns, widths)) + " |",
        "| " + " | ".join("-" * w for w in widths) + " |",
    ]
    lines += ["| " + " | ".join(cell.rjust(w) for cell, w in zip(r, widths)) + " |" for r in body]
    return "\n".join(lines) + "\n"


def render(report: Renderable, fmt: str = "csv") -> str:
    if fmt not in FORMATS:
        raise InvalidParameterError(f"unknown format {fmt!r}, expected one of {FORMATS}")
    full = fmt == "csv_full"
    columns, rows = to_rows(report, full)
    if fmt == "md":
        return _markdown(columns, rows)
    return _csv(columns, rows, full)


def read_csv(text: str) -> List[Dict[str, Any]]:
    """Parse a csv_full rendering back into numbers; text columns stay strings."""
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        out.append({k: (v if k in TEXT_COLUMNS else float(v)) for k, v in row.items()})
    return out
