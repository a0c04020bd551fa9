"""Galerkin P1 solve of -Lap u = f with interpolated Dirichlet data."""

from __future__ import annotations

import logging
from typing import Optional, Tuple

from ..linsolve import SolveStats, solve_spd
from ..mesh import Mesh
from ..settings import SolverSettings, settings
from .assembly import assemble_load, assemble_stiffness, reduce_dirichlet
from .fields import DiscreteField, nodal_interpolant
from .norms import ExactSolution

logger = logging.getLogger(__name__)


def solve_poisson(
    mesh: Mesh,
    problem: ExactSolution,
    tol: Optional[float] = None,
    solver: Optional[SolverSettings] = None,
) -> Tuple[DiscreteField, SolveStats]:
    """u_h equal to the interpolated exact solution on the boundary and Galerkin with f^I inside."""
    solver = solver or settings.solver
    tol = solver.tol if tol is None else tol
    fI = nodal_interpolant(problem.f, mesh)
    lift = nodal_interpolant(problem.u, mesh)
    system = reduce_dirichlet(assemble_stiffness(mesh), assemble_load(mesh, fI.values), mesh.boundary, lift.values)
    x, stats = solve_spd(
        system.matrix,
        system.rhs,
        method=solver.method,
        tol=tol,
        maxit_factor=solver.maxit_factor,
        maxit=solver.maxit,
    )
    logger.info(
        "Solved %d unknowns with %s: %d iterations, residual %.2e, %.2fs",
        system.free.size,
        stats.method,
        stats.iterations,
        stats.residual,
        stats.seconds,
    )
    return DiscreteField(mesh, system.expand(x)), stats
