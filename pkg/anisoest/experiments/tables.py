"""Reproduction of the benchmark tables and comparison with printed values."""

from __future__ import annotations

import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import yaml
from jsonschema import validate

from ..errors import InvalidParameterError
from ..settings import AnisoSettings, settings as default_settings
from .cases import run_case
from .problems import make_problem

logger = logging.getLogger(__name__)

SPECS_DIR = Path(__file__).resolve().parents[1] / "specs"
SCHEMA_PATH = SPECS_DIR / "TABLE_SCHEMA.json"
TABLES_PATH = SPECS_DIR / "tables.yaml"
SCALES = ("desk", "full")

REL_TOL = 0.03
EFF_TOL = 0.05
RATIO_TOL = 0.01


def _load_schema() -> Dict[str, Any]:
    return json.loads(SCHEMA_PATH.read_text())


def load_tables(path: Optional[Path] = None) -> Dict[int, Dict[str, Any]]:
    """Table definitions keyed by id, validated against TABLE_SCHEMA.json."""
    if path is None:
        return _default_tables()
    return _parse_tables(Path(path).read_text(encoding="utf-8"))


@lru_cache(maxsize=1)
def _default_tables() -> Dict[int, Dict[str, Any]]:
    return _parse_tables(TABLES_PATH.read_text(encoding="utf-8"))


def _parse_tables(text: str) -> Dict[int, Dict[str, Any]]:
    data = yaml.safe_load(text)
    validate(instance=data, schema=_load_schema())
    return {int(t["id"]): t for t in data["tables"]}


@dataclass
class TableRow:
    params: Dict[str, float]
    n_triangles: int
    values: Dict[str, float] = field(default_factory=dict)
    reference: Dict[str, float] = field(default_factory=dict)
    solver: str = ""
    iterations: int = 0


@dataclass
class TableReport:
    table_id: int
    scale: str
    title: str
    columns: List[str]
    rows: List[TableRow] = field(default_factory=list)
    skipped: List[Dict[str, float]] = field(default_factory=list)


@dataclass
class Deviation:
    row: Dict[str, float]
    column: str
    value: float
    reference: float
    tolerance: str

    def describe(self) -> str:
        params = ", ".join(f"{k}={v:g}" for k, v in self.row.items())
        return f"[{params}] {self.column}: got {self.value:.4g}, reference {self.reference:.4g} ({self.tolerance})"


def _row_params(row: Dict[str, Any]) -> Dict[str, float]:
    return {k: row[k] for k in ("a", "eps", "N", "M") if k in row}


def _triangles(row: Dict[str, Any]) -> int:
    return 2 * int(row["N"]) * int(row["M"])


def table_rows(table_id: int, scale: str, config: Optional[AnisoSettings] = None
) -> Tuple[Dict[str, Any], List[Dict[str, Any]], List[Dict[str, float]]]:
    """(table definition, rows to run, rows skipped at this scale)."""
    config = config or default_settings
    tables = load_tables()
    if table_id not in tables:
        raise InvalidParameterError(f"unknown table {table_id}, expected one of {sorted(tables)}")
    if scale not in SCALES:
        raise InvalidParameterError(f"unknown scale {scale!r}, expected one of {SCALES}")
    table = tables[table_id]
    run, skipped = [], []
    for row in table["rows"]:
        if scale == "desk" and _triangles(row) > config.desk_max_triangles:
            logger.info("Skipping table %d row %s at desk scale (%d triangles)", table_id, _row_params(row), _triangles(row))
            skipped.append(_row_params(row))
        else:
            run.append(row)
    return table, run, skipped


def _run_row(problem_id: str, row: Dict[str, Any], config: AnisoSettings) -> TableRow:
    problem = make_problem(problem_id, a=row.get("a"), eps=row.get("eps"))
    case = run_case(problem, int(row["N"]), int(row["M"]), config=config, keep_state=False)
    values = {key: value for key, value in case.report.row().items() if key != "region"}
    values["hf_err"] = case.data_norms["hf_err"]
    return TableRow(
        params=_row_params(row),
        n_triangles=case.n_triangles,
        values=values,
        reference=dict(row["ref"]),
        solver=case.stats.method,
        iterations=case.stats.iterations,
    )


def reproduce_table(
    table_id: int, scale: str = "desk", config: Optional[AnisoSettings] = None, threads: Optional[int] = None
) -> TableReport:
    """Run every row of a table at the given scale; rows run on ``threads`` worker threads."""
    config = config or default_settings
    table, rows, skipped = table_rows(table_id, scale, config)
    threads = max(1, threads or config.threads)
    problem_id = table["problem"]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(lambda row: _run_row(problem_id, row, config), rows))
    return TableReport(
        table_id=table_id,
        scale=scale,
        title=table["title"],
        columns=list(table["columns"]),
        rows=results,
        skipped=skipped,
    )


def _within(column: str, value: float, reference: float) -> Tuple[bool, str]:
    if column.startswith("eff_"):
        return abs(value - reference) <= EFF_TOL + 1e-12, f"+-{EFF_TOL}"
    if column.startswith("ratio_"):
        return abs(value - reference) <= RATIO_TOL + 1e-12, f"+-{RATIO_TOL}"
    return abs(value - reference) <= REL_TOL * abs(reference), f"{REL_TOL:.0%} relative"


def compare_reference(report: TableReport) -> List[Deviation]:
    deviations: List[Deviation] = []
    for row in report.rows:
        for column, reference in row.reference.items():
            value = row.values.get(column, math.nan)
            ok, tolerance = _within(column, value, reference)
            if not ok:
                deviation = Deviation(row.params, column, value, reference, tolerance)
                logger.warning("Reference deviation: %s", deviation.describe())
                deviations.append(deviation)
    return deviations
