import math

import pytest

from anisoest.errors import InvalidParameterError
from anisoest.estimator import REPORT_COLUMNS, EstimatorReport
from anisoest.experiments import TableReport, TableRow
from anisoest.render import CASE_COLUMNS, format_cell, read_csv, render, sci3


def _report():
    return EstimatorReport(
        error=0.1007,
        Y=0.125,
        E={"bubble": 0.28, "uniform": 0.381},
        E0={"bubble": 0.0123456789, "uniform": 0.05},
        upper={"eq2": 0.5, "eq3": 0.45},
    )


@pytest.mark.parametrize(
    "value,text",
    [(0.101, "1.01e-1"), (2.46, "2.46e+0"), (0.000351, "3.51e-4"), (12345.0, "1.23e+4"), (0.0, "0.00e+0")],
)
def test_sci3(value, text):
    assert sci3(value) == text


def test_format_cell():
    assert format_cell("eff_bubble", 2.7812) == "2.78"
    assert format_cell("ratio_uniform", 0.3149) == "0.31"
    assert format_cell("N", 20) == "20"
    assert format_cell("eps", 0.0625) == "0.0625"
    assert format_cell("error", math.nan) == "-"
    assert format_cell("region", "Omega") == "Omega"
    assert format_cell("error", 0.1, full=True) == "0.1"


def test_empty_list_renders_header_only():
    assert render([], "csv") == ",".join(CASE_COLUMNS) + "\n"


def test_estimator_report_csv():
    lines = render(_report(), "csv").splitlines()
    assert lines[0] == ",".join(REPORT_COLUMNS)
    cells = dict(zip(REPORT_COLUMNS, lines[1].split(",")))
    assert cells["region"] == "Omega"
    assert cells["error"] == "1.01e-1"
    assert cells["E_uniform"] == "3.81e-1"
    assert cells["eff_uniform"] == "3.78"
    assert cells["ratio_bubble"] == "0.04"
    assert cells["upper_eq3"] == "4.50e-1"


def test_markdown_is_aligned():
    lines = render([_report(), _report()], "md").splitlines()
    assert len(lines) == 4
    assert all(line.startswith("| ") and line.endswith(" |") for line in lines)
    assert len({len(line) for line in lines}) == 1
    assert set(lines[1]) <= {"|", "-", " "}


def test_full_precision_csv_round_trip():
    report = _report()
    rows = read_csv(render(report, "csv_full"))
    assert len(rows) == 1
    expected = report.row()
    for column, value in expected.items():
        if isinstance(value, str):
            assert rows[0][column] == value
        elif math.isnan(value):
            assert math.isnan(rows[0][column])
        else:
            assert rows[0][column] == value


def test_table_report_columns():
    row = TableRow(
        params={"eps": 0.0625, "N": 160, "M": 160},
        n_triangles=51200,
        values={"error": 0.229, "ratio_bubble": 0.081, "E0_bubble": 0.0616, "hf_err": 7.2e-5},
    )
    report = TableReport(table_id=3, scale="desk", title="t", columns=["error", "E0_bubble", "ratio_bubble"], rows=[row])
    lines = render(report, "csv").splitlines()
    assert lines[0] == "eps,N,M,error,E0_bubble,ratio_bubble"
    assert lines[1] == "0.0625,160,160,2.29e-1,6.16e-2,0.08"
    full = render(report, "csv_full").splitlines()
    assert full[0].endswith(",hf_err")


def test_unknown_format():
    with pytest.raises(InvalidParameterError):
        render(_report(), "xlsx")
