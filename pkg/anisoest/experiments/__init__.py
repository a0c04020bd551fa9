from .cases import CaseReport, CaseState, estimate, prepare_case, problem_mesh, run_case
from .problems import PROBLEM_IDS, TestProblem, laplacian_residual, make_problem
from .strips import StripReport, strip_region, strip_report, strip_reports, strip_sum_check
from .tables import Deviation, TableReport, TableRow, compare_reference, load_tables, reproduce_table
from .verification import SUITES, CheckResult, run_suite

__all__ = [
    "CaseReport",
    "CaseState",
    "estimate",
    "prepare_case",
    "problem_mesh",
    "run_case",
    "PROBLEM_IDS",
    "TestProblem",
    "laplacian_residual",
    "make_problem",
    "StripReport",
    "strip_region",
    "strip_report",
    "strip_reports",
    "strip_sum_check",
    "Deviation",
    "TableReport",
    "TableRow",
    "compare_reference",
    "load_tables",
    "reproduce_table",
    "SUITES",
    "CheckResult",
    "run_suite",
]
