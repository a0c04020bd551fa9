"""The mesh -> solve -> error -> estimators pipeline for one parameter set."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from ..estimator import (
    EdgeJump,
    EstimatorReport,
    jump_residuals,
    lower_estimator,
    short_edges,
    upper_estimator,
    y_indicator,
)
from ..fem import (
    DataNorms,
    DiscreteField,
    P2Field,
    local_energy_error_sq,
    nodal_interpolant,
    quadratic_interpolant,
    solve_poisson,
    weighted_norms,
)
from ..linsolve import SolveStats
from ..mesh import GeomTables, Mesh, Topology, build_grid_1d, build_tensor_mesh, build_topology, compute_geometry
from ..settings import AnisoSettings, settings as default_settings
from .problems import TestProblem

logger = logging.getLogger(__name__)

DEFAULT_VARIANTS = ("bubble", "uniform")


@dataclass(eq=False)
class CaseState:
    """Everything computed for one case, shared read-only by the diagnostics."""

    problem: TestProblem
    mesh: Mesh
    topo: Topology
    geom: GeomTables
    u_h: DiscreteField
    fI: DiscreteField
    f2: P2Field
    jumps: EdgeJump
    norms: DataNorms
    local_error_sq: np.ndarray
    short: np.ndarray


@dataclass(eq=False)
class CaseReport:
    problem: str
    N: int
    M: int
    n_triangles: int
    stats: SolveStats
    error: float
    data_norms: Dict[str, float]
    report: EstimatorReport
    state: Optional[CaseState] = field(default=None, repr=False)

    def effectivity(self, variant: str) -> float:
        return self.report.effectivity(variant)

    def row(self) -> Dict[str, object]:
        values: Dict[str, object] = {"problem": self.problem, "N": self.N, "M": self.M}
        values.update(self.report.row())
        values["hf_err"] = self.data_norms["hf_err"]
        return values


def problem_mesh(problem: TestProblem, N: int, M: int, diagonal: str = "sw_ne") -> Mesh:
    """Uniform N x M tensor mesh of the problem's rectangle."""
    Lx, Ly = problem.lengths
    gx = build_grid_1d("uniform" if Lx == 1.0 else "scaled", N, Lx)
    gy = build_grid_1d("uniform" if Ly == 1.0 else "scaled", M, Ly)
    return build_tensor_mesh(gx, gy, diagonal)


def prepare_case(
    problem: TestProblem,
    N: int,
    M: int,
    c_short: Optional[float] = None,
    config: Optional[AnisoSettings] = None,
    mesh: Optional[Mesh] = None,
) -> Tuple[CaseState, SolveStats]:
    """Build, solve and evaluate the shared quantities; returns (CaseState, SolveStats)."""
    config = config or default_settings
    est = config.estimator
    c_short = est.c_short if c_short is None else c_short
    mesh = mesh or problem_mesh(problem, N, M, est.diagonal)
    topo = build_topology(mesh)
    geom = compute_geometry(mesh, topo)
    u_h, stats = solve_poisson(mesh, problem, solver=config.solver)
    fI = nodal_interpolant(problem.f, mesh)
    f2 = quadratic_interpolant(problem.f, mesh, topo)
    state = CaseState(
        problem=problem,
        mesh=mesh,
        topo=topo,
        geom=geom,
        u_h=u_h,
        fI=fI,
        f2=f2,
        jumps=jump_residuals(mesh, topo, u_h),
        norms=weighted_norms(mesh, topo, geom, problem, fI, est.f_approx, f2),
        local_error_sq=local_energy_error_sq(u_h, problem),
        short=short_edges(geom, topo, c_short),
    )
    return state, stats


def estimate(state: CaseState, variants: Sequence[str] = DEFAULT_VARIANTS, region=None) -> EstimatorReport:
    """All estimator values of ``state`` on ``region`` (the whole domain by default)."""
    elements = None if region is None else region.elements
    err = state.local_error_sq if elements is None else state.local_error_sq[elements]
    report = EstimatorReport(
        region="Omega" if region is None else region.name,
        error=float(np.sqrt(err.sum())),
        Y=y_indicator(state.local_error_sq, state.norms, region),
    )
    for variant in variants:
        report = report.merge(
            lower_estimator(state.geom, state.topo, state.jumps, state.norms, variant, region, state.short)
        )
    for variant in ("eq2", "eq3"):
        report = report.merge(upper_estimator(state.geom, state.topo, state.jumps, state.norms, variant, region))
    return report


def run_case(
    problem: TestProblem,
    N: int,
    M: int,
    variants: Sequence[str] = DEFAULT_VARIANTS,
    c_short: Optional[float] = None,
    config: Optional[AnisoSettings] = None,
    keep_state: bool = True,
) -> CaseReport:
    state, stats = prepare_case(problem, N, M, c_short, config)
    report = estimate(state, variants)
    case = CaseReport(
        problem=problem.label,
        N=N,
        M=M,
        n_triangles=state.mesh.n_triangles,
        stats=stats,
        error=float(report.error),
        data_norms={key: state.norms.total(key) for key in ("hf_err", "f_err", "osc_fI", "osc_f")},
        report=report,
        state=state,
    )
    logger.info(
        "Case %s N=%d M=%d: error %.3e, %s",
        problem.label,
        N,
        M,
        case.error,
        ", ".join(f"E_{v} {report.E[v]:.3e}" for v in variants),
    )
    if not keep_state:
        case.state = None
    return case
