"""Continuous piecewise-linear and piecewise-quadratic nodal fields."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import InvalidParameterError
from ..mesh import Mesh, Topology
from ..mesh.io import dump_values
from .assembly import basis_gradients

ScalarFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]


def _evaluate(g: ScalarFunction, points: np.ndarray) -> np.ndarray:
    values = np.asarray(g(points[:, 0], points[:, 1]), dtype=float)
    return np.broadcast_to(values, (points.shape[0],)).copy()


@dataclass(frozen=True, eq=False)
class DiscreteField:
    """Nodal values of a P1 function on ``mesh``."""

    mesh: Mesh
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float)
        if values.shape != (self.mesh.n_nodes,):
            raise InvalidParameterError(
                f"field has {values.size} values for a mesh with {self.mesh.n_nodes} nodes"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def gradients(self) -> np.ndarray:
        """(m, 2) constant gradient on each triangle."""
        grads = basis_gradients(self.mesh)
        return np.einsum("tk,tkd->td", self.values[self.mesh.triangles], grads)

    def scaled(self, factor: float) -> "DiscreteField":
        return DiscreteField(self.mesh, factor * self.values)

    def to_text(self) -> str:
        return dump_values(self.values.tolist())


@dataclass(frozen=True, eq=False)
class P2Field:
    """Values at nodes and at edge midpoints, indexed like ``topo.edges``."""

    mesh: Mesh
    topo: Topology
    node_values: np.ndarray
    edge_values: np.ndarray

    def __post_init__(self) -> None:
        if self.node_values.shape != (self.mesh.n_nodes,) or self.edge_values.shape != (self.topo.n_edges,):
            raise InvalidParameterError("P2 field needs one value per node and one per edge")
        self.node_values.setflags(write=False)
        self.edge_values.setflags(write=False)

    def element_values(self) -> np.ndarray:
        """(m, 6): vertex values, then the midpoint values of the edges opposite them."""
        return np.hstack([self.node_values[self.mesh.triangles], self.edge_values[self.topo.tri_edges]])

    def evaluate(self, bary: np.ndarray) -> np.ndarray:
        """(m, q) values at barycentric points ``bary`` of shape (q, 3)."""
        l0, l1, l2 = bary[:, 0], bary[:, 1], bary[:, 2]
        basis = np.column_stack(
            [
                l0 * (2 * l0 - 1),
                l1 * (2 * l1 - 1),
                l2 * (2 * l2 - 1),
                4 * l1 * l2,
                4 * l0 * l2,
                4 * l0 * l1,
            ]
        )
        return self.element_values() @ basis.T

    def midpoint_defect(self) -> np.ndarray:
        """(m, 3) value at the midpoint of edge k minus the mean of its two vertex values."""
        vert = self.node_values[self.mesh.triangles]
        mean = 0.5 * (vert[:, [1, 2, 0]] + vert[:, [2, 0, 1]])
        return self.edge_values[self.topo.tri_edges] - mean

    def element_averages(self) -> np.ndarray:
        """Exact mean over each triangle; the vertex basis functions integrate to zero."""
        return self.edge_values[self.topo.tri_edges].mean(axis=1)


def nodal_interpolant(g: ScalarFunction, mesh: Mesh) -> DiscreteField:
    return DiscreteField(mesh, _evaluate(g, mesh.nodes))


def quadratic_interpolant(g: ScalarFunction, mesh: Mesh, topo: Topology) -> P2Field:
    mid = 0.5 * (mesh.nodes[topo.edges[:, 0]] + mesh.nodes[topo.edges[:, 1]])
    return P2Field(mesh, topo, _evaluate(g, mesh.nodes), _evaluate(g, mid))
