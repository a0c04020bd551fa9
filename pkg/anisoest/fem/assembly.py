"""P1 stiffness, mass and load assembly with Dirichlet elimination."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix, csr_matrix

from ..errors import AssemblyError, InvalidParameterError
from ..mesh import Mesh
from ..mesh.tensor import signed_areas

logger = logging.getLogger(__name__)

_LOCAL_MASS = np.array([[2.0, 1.0, 1.0], [1.0, 2.0, 1.0], [1.0, 1.0, 2.0]]) / 12.0


def basis_gradients(mesh: Mesh) -> np.ndarray:
    """(m, 3, 2) gradients of the three barycentric coordinates on each triangle."""
    p = mesh.nodes[mesh.triangles]
    area2 = 2.0 * signed_areas(mesh.nodes, mesh.triangles)
    if np.any(area2 <= 0.0):
        raise AssemblyError("degenerate triangle in assembly")
    x, y = p[:, :, 0], p[:, :, 1]
    gx = (y[:, [1, 2, 0]] - y[:, [2, 0, 1]]) / area2[:, None]
    gy = (x[:, [2, 0, 1]] - x[:, [1, 2, 0]]) / area2[:, None]
    return np.stack([gx, gy], axis=2)


def local_stiffness(mesh: Mesh) -> np.ndarray:
    """(m, 3, 3) element matrices |T| grad(l_a) . grad(l_b)."""
    grads = basis_gradients(mesh)
    area = signed_areas(mesh.nodes, mesh.triangles)
    return area[:, None, None] * np.einsum("tad,tbd->tab", grads, grads)


def local_mass(mesh: Mesh) -> np.ndarray:
    area = signed_areas(mesh.nodes, mesh.triangles)
    return area[:, None, None] * _LOCAL_MASS


def _assemble(mesh: Mesh, local: np.ndarray) -> csr_matrix:
    rows = np.repeat(mesh.triangles, 3, axis=1).ravel()
    cols = np.tile(mesh.triangles, (1, 3)).ravel()
    n = mesh.n_nodes
    return coo_matrix((local.ravel(), (rows, cols)), shape=(n, n)).tocsr()


def assemble_stiffness(mesh: Mesh) -> csr_matrix:
    """Full (unreduced) stiffness matrix; its row sums vanish."""
    return _assemble(mesh, local_stiffness(mesh))


def assemble_mass(mesh: Mesh) -> csr_matrix:
    return _assemble(mesh, local_mass(mesh))


def assemble_load(mesh: Mesh, fI: np.ndarray) -> np.ndarray:
    """Exact <f^I, phi_z> through the P1 mass matrix."""
    values = np.asarray(getattr(fI, "values", fI), dtype=float)
    if values.shape != (mesh.n_nodes,):
        raise InvalidParameterError("load needs one source value per node")
    area = signed_areas(mesh.nodes, mesh.triangles)
    local = values[mesh.triangles]
    contrib = (area / 12.0)[:, None] * (local + local.sum(axis=1, keepdims=True))
    return np.bincount(mesh.triangles.ravel(), weights=contrib.ravel(), minlength=mesh.n_nodes)


@dataclass(frozen=True, eq=False)
class LinearSystem:
    """Reduced system over the free nodes; ``free`` maps rows to global node ids."""

    matrix: csr_matrix
    rhs: np.ndarray
    free: np.ndarray
    lift: np.ndarray

    def expand(self, x: np.ndarray) -> np.ndarray:
        """Global nodal vector with solved free values and the lift on the boundary."""
        full = self.lift.copy()
        full[self.free] = x
        return full


def reduce_dirichlet(stiffness: csr_matrix, load: np.ndarray, boundary: np.ndarray, lift: np.ndarray) -> LinearSystem:
    """Eliminate the Dirichlet rows and columns, moving A_IB u_B to the right-hand side."""
    free = np.flatnonzero(~boundary)
    fixed = np.flatnonzero(boundary)
    lift = np.where(boundary, lift, 0.0)
    A_ii = stiffness[free][:, free].tocsr()
    rhs = load[free] - stiffness[free][:, fixed] @ lift[fixed]
    logger.debug("Reduced system: %d free of %d nodes, %d nonzeros", free.size, boundary.size, A_ii.nnz)
    return LinearSystem(matrix=A_ii, rhs=rhs, free=free, lift=lift)
