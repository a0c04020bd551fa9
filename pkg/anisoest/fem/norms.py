"""Error and data-oscillation norms evaluated with exact quadrature."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Protocol, Tuple

import numpy as np

from ..errors import InvalidParameterError
from ..mesh import GeomTables, Mesh, Topology
from ..mesh.tensor import signed_areas
from .fields import DiscreteField, P2Field, ScalarFunction, quadratic_interpolant
from .quadrature import quadrature_rule


class ExactSolution(Protocol):
    f: ScalarFunction
    u: ScalarFunction

    def grad_u(self, x: np.ndarray, y: np.ndarray) -> Tuple[np.ndarray, np.ndarray]: ...


def local_energy_error_sq(u_h: DiscreteField, problem: ExactSolution) -> np.ndarray:
    """Per-triangle ||grad u_h - (grad u)^I||^2 with the edge-midpoint rule."""
    mesh = u_h.mesh
    gx, gy = problem.grad_u(mesh.nodes[:, 0], mesh.nodes[:, 1])
    G = np.column_stack([np.broadcast_to(gx, mesh.n_nodes), np.broadcast_to(gy, mesh.n_nodes)])
    Gt = G[mesh.triangles]
    mid = 0.5 * (Gt[:, [1, 2, 0], :] + Gt[:, [2, 0, 1], :])
    diff = u_h.gradients()[:, None, :] - mid
    area = signed_areas(mesh.nodes, mesh.triangles)
    return area / 3.0 * np.einsum("tkd,tkd->t", diff, diff)


def energy_error(u_h: DiscreteField, problem: ExactSolution) -> float:
    return float(np.sqrt(local_energy_error_sq(u_h, problem).sum()))


def p1_square_integrals(values: np.ndarray, mesh: Mesh, area: np.ndarray) -> np.ndarray:
    """Per-triangle integral of the square of a P1 field."""
    v = values[mesh.triangles]
    return area / 12.0 * ((v * v).sum(axis=1) + v.sum(axis=1) ** 2)


@dataclass(frozen=True, eq=False)
class DataNorms:
    """Per-triangle squared contributions of the data terms.

    Keys: ``hf_err`` ||h_T(f - f^I)||^2, ``f_err`` ||f - f^I||^2,
    ``osc_fI`` ||H_T osc(f^I;T)||^2, ``osc_f`` ||H_T osc(f;T)||^2,
    ``f_vol`` the integral of the squared volume approximation of f (f^I or
    the element average), ``hf_vol`` h_T^2 f_vol and ``Hf_vol`` H_T^2 f_vol.
    """

    elementwise: dict

    def total(self, key: str, elements: Optional[np.ndarray] = None) -> float:
        values = self.elementwise[key]
        if elements is not None:
            values = values[elements]
        return float(np.sqrt(values.sum()))


def _interpolation_defect_sq(f2: P2Field, area: np.ndarray) -> np.ndarray:
    points, weights = quadrature_rule(4)
    d = f2.midpoint_defect()
    bubbles = 4.0 * np.column_stack(
        [points[:, 1] * points[:, 2], points[:, 0] * points[:, 2], points[:, 0] * points[:, 1]]
    )
    at_points = d @ bubbles.T
    return area * (at_points**2 @ weights)


def weighted_norms(
    mesh: Mesh,
    topo: Topology,
    geom: GeomTables,
    problem: ExactSolution,
    fI: DiscreteField,
    f_approx: str = "lagrange",
    f2: Optional[P2Field] = None,
) -> DataNorms:
    """Data norms with f replaced by its quadratic interpolant."""
    if f_approx not in ("lagrange", "average"):
        raise InvalidParameterError(f"unknown f approximation {f_approx!r}")
    if f2 is None:
        f2 = quadratic_interpolant(problem.f, mesh, topo)
    area = geom.tri_area
    f_err = _interpolation_defect_sq(f2, area)

    nodal = fI.values[mesh.triangles]
    osc_fI = nodal.max(axis=1) - nodal.min(axis=1)
    centroid = mesh.nodes[mesh.triangles].mean(axis=1)
    fc = np.broadcast_to(np.asarray(problem.f(centroid[:, 0], centroid[:, 1]), dtype=float), (mesh.n_triangles,))
    samples = np.column_stack([f2.node_values[mesh.triangles], f2.edge_values[topo.tri_edges], fc])
    osc_f = samples.max(axis=1) - samples.min(axis=1)

    if f_approx == "lagrange":
        f_vol = p1_square_integrals(fI.values, mesh, area)
    else:
        f_vol = area * f2.element_averages() ** 2

    h2 = geom.tri_h**2
    H2 = geom.tri_diam**2
    return DataNorms(
        elementwise={
            "hf_err": h2 * f_err,
            "f_err": f_err,
            "osc_fI": area * H2 * osc_fI**2,
            "osc_f": area * H2 * osc_f**2,
            "f_vol": f_vol,
            "hf_vol": h2 * f_vol,
            "Hf_vol": H2 * f_vol,
        }
    )
