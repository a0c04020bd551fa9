"""Triangulations of tensor-product grids."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import GeometryError, InvalidParameterError
from .grid import Grid1D

logger = logging.getLogger(__name__)

DIAGONALS = ("sw_ne", "nw_se", "criss_cross")


def signed_areas(nodes: np.ndarray, triangles: np.ndarray) -> np.ndarray:
    p0 = nodes[triangles[:, 0]]
    p1 = nodes[triangles[:, 1]]
    p2 = nodes[triangles[:, 2]]
    d1 = p1 - p0
    d2 = p2 - p0
    return 0.5 * (d1[:, 0] * d2[:, 1] - d2[:, 0] * d1[:, 1])


@dataclass(frozen=True, eq=False)
class Mesh:
    """Nodes, counterclockwise triangles and boundary flags.

    ``provenance`` holds the structured (i, j) index of each node when the
    mesh came from a tensor grid; cell-centre nodes carry (-1, -1).
    """

    nodes: np.ndarray
    triangles: np.ndarray
    boundary: np.ndarray
    provenance: Optional[np.ndarray] = None
    gx: Optional[Grid1D] = None
    gy: Optional[Grid1D] = None
    diagonal: Optional[str] = None

    def __post_init__(self) -> None:
        nodes = np.ascontiguousarray(self.nodes, dtype=float)
        tris = np.ascontiguousarray(self.triangles, dtype=np.int64)
        boundary = np.ascontiguousarray(self.boundary, dtype=bool)
        if nodes.ndim != 2 or nodes.shape[1] != 2:
            raise InvalidParameterError("nodes must be an (n, 2) array")
        if tris.ndim != 2 or tris.shape[1] != 3:
            raise InvalidParameterError("triangles must be an (m, 3) array")
        if boundary.shape != (nodes.shape[0],):
            raise InvalidParameterError("one boundary flag per node expected")
        if tris.size and (tris.min() < 0 or tris.max() >= nodes.shape[0]):
            raise InvalidParameterError("triangle refers to a missing node")
        areas = signed_areas(nodes, tris)
        bad = np.flatnonzero(areas <= 0.0)
        if bad.size:
            raise GeometryError(
                f"{bad.size} triangle(s) with non-positive signed area, first is {int(bad[0])}"
            )
        arrays = [nodes, tris, boundary]
        if self.provenance is not None:
            prov = np.ascontiguousarray(self.provenance, dtype=np.int64)
            if prov.shape != (nodes.shape[0], 2):
                raise InvalidParameterError("provenance must be an (n, 2) array")
            object.__setattr__(self, "provenance", prov)
            arrays.append(prov)
        for arr in arrays:
            arr.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "triangles", tris)
        object.__setattr__(self, "boundary", boundary)

    @property
    def n_nodes(self) -> int:
        return self.nodes.shape[0]

    @property
    def n_triangles(self) -> int:
        return self.triangles.shape[0]

    @property
    def structured(self) -> bool:
        return self.provenance is not None and self.gx is not None and self.gy is not None

    def node_id(self, i: int, j: int) -> int:
        """Global id of grid node (i, j) on a structured mesh."""
        if self.gx is None or self.gy is None:
            raise InvalidParameterError("mesh has no tensor grid")
        nx, ny = self.gx.n, self.gy.n
        if not (0 <= i <= nx and 0 <= j <= ny):
            raise InvalidParameterError(f"grid index ({i}, {j}) outside {nx}x{ny}")
        return j * (nx + 1) + i


def build_tensor_mesh(gx: Grid1D, gy: Grid1D, diagonal: str = "sw_ne") -> Mesh:
    """Split every cell of gx x gy into triangles.

    sw_ne draws the diagonal from the lower-left to the upper-right corner
    and nw_se the other one; all cells share the orientation. criss_cross
    draws both diagonals through an added centre node.
    """
    if diagonal not in DIAGONALS:
        raise InvalidParameterError(f"unknown diagonal {diagonal!r}, expected one of {DIAGONALS}")
    nx, ny = gx.n, gy.n
    X, Y = np.meshgrid(gx.points, gy.points)
    nodes = np.column_stack([X.ravel(), Y.ravel()])
    I, J = np.meshgrid(np.arange(nx + 1), np.arange(ny + 1))
    provenance = np.column_stack([I.ravel(), J.ravel()])
    boundary = (provenance[:, 0] == 0) | (provenance[:, 0] == nx) | (provenance[:, 1] == 0) | (
        provenance[:, 1] == ny
    )

    ci, cj = np.meshgrid(np.arange(nx), np.arange(ny))
    ci = ci.ravel()
    cj = cj.ravel()
    p00 = cj * (nx + 1) + ci
    p10 = p00 + 1
    p01 = p00 + nx + 1
    p11 = p01 + 1

    if diagonal == "sw_ne":
        lower = np.column_stack([p00, p10, p11])
        upper = np.column_stack([p00, p11, p01])
        triangles = np.stack([lower, upper], axis=1).reshape(-1, 3)
    elif diagonal == "nw_se":
        lower = np.column_stack([p00, p10, p01])
        upper = np.column_stack([p10, p11, p01])
        triangles = np.stack([lower, upper], axis=1).reshape(-1, 3)
    else:
        centre = nodes.shape[0] + np.arange(nx * ny)
        xc = 0.5 * (gx.points[ci] + gx.points[ci + 1])
        yc = 0.5 * (gy.points[cj] + gy.points[cj + 1])
        nodes = np.vstack([nodes, np.column_stack([xc, yc])])
        provenance = np.vstack([provenance, np.full((nx * ny, 2), -1, dtype=np.int64)])
        boundary = np.concatenate([boundary, np.zeros(nx * ny, dtype=bool)])
        fan = [
            np.column_stack([p00, p10, centre]),
            np.column_stack([p10, p11, centre]),
            np.column_stack([p11, p01, centre]),
            np.column_stack([p01, p00, centre]),
        ]
        triangles = np.stack(fan, axis=1).reshape(-1, 3)

    mesh = Mesh(
        nodes=nodes,
        triangles=triangles,
        boundary=boundary,
        provenance=provenance,
        gx=gx,
        gy=gy,
        diagonal=diagonal,
    )
    logger.debug(
        "Built %s tensor mesh %dx%d: %d nodes, %d triangles",
        diagonal,
        nx,
        ny,
        mesh.n_nodes,
        mesh.n_triangles,
    )
    return mesh
