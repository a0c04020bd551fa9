"""Strip regions (x_{i-1}, x_{i+1}) x (0, Ly) of structured meshes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence

import numpy as np

from ..errors import InvalidParameterError
from ..estimator import EstimatorReport, Region
from ..mesh import Mesh, Topology
from .cases import CaseReport, estimate


@dataclass
class StripReport:
    i: int
    report: EstimatorReport

    def ratio_E0_Y(self, variant: str) -> float:
        Y = self.report.Y or 0.0
        return self.report.E0.get(variant, 0.0) / Y if Y > 0 else float("nan")

    def ratio_E_Y(self, variant: str) -> float:
        Y = self.report.Y or 0.0
        return self.report.E.get(variant, 0.0) / Y if Y > 0 else float("nan")


def strip_region(mesh: Mesh, topo: Topology, i: int) -> Region:
    """Omega_i by element centroid, with x_{-1} = x_0 and x_{n+1} = x_n."""
    if mesh.gx is None:
        raise InvalidParameterError("strips need a structured mesh")
    n = mesh.gx.n
    if not 0 <= i <= n:
        raise InvalidParameterError(f"strip index {i} outside 0..{n}")
    x = mesh.gx.points
    lo, hi = x[max(i - 1, 0)], x[min(i + 1, n)]
    cx = mesh.nodes[mesh.triangles, 0].mean(axis=1)
    return Region.from_elements(f"Omega_{i}", (cx > lo) & (cx < hi), topo)


def strip_report(case: CaseReport, i: int, variants: Sequence[str] = ("bubble", "uniform")) -> StripReport:
    state = case.state
    if state is None:
        raise InvalidParameterError("case was run without keeping its state")
    region = strip_region(state.mesh, state.topo, i)
    return StripReport(i=i, report=estimate(state, variants, region))


def strip_reports(case: CaseReport, variants: Sequence[str] = ("bubble", "uniform")) -> List[StripReport]:
    state = case.state
    if state is None:
        raise InvalidParameterError("case was run without keeping its state")
    if state.mesh.gx is None:
        raise InvalidParameterError("strips need a structured mesh")
    return [strip_report(case, i, variants) for i in range(state.mesh.gx.n + 1)]


def strip_sum_check(case: CaseReport, strips: List[StripReport], variant: str) -> Dict[str, float]:
    """sum_i E_i^2 / E^2; every edge and element lies in one or two strips."""
    total = case.report.E[variant] ** 2
    summed = float(np.sum([s.report.E[variant] ** 2 for s in strips]))
    return {"strip_sum": summed, "global": total, "ratio": summed / total if total else float("nan")}
