"""Edge discovery, edge patches and anticlockwise node stars."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..errors import TopologyError
from .tensor import Mesh

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True, eq=False)
class Topology:
    """Edges with their two-triangle patches, and node stars in CSR layout.

    ``edges[e] = (a, b)`` with a < b. ``edge_tris[e] = (left, right)`` where the
    left triangle sees a -> b counterclockwise; a missing side is -1.
    ``tri_edges[t, k]`` is the edge opposite local vertex k.

    For node z, ``star_edges[star_edge_ptr[z]:star_edge_ptr[z+1]]`` lists
    e_0..e_k anticlockwise and ``star_tris[star_ptr[z]:star_ptr[z+1]]`` lists
    t_0..t_{k-1} with t_i lying between e_i and e_{i+1}. Closed fans have as
    many triangles as edges; open (boundary) fans start and end with the two
    boundary edges.
    """

    edges: np.ndarray
    edge_tris: np.ndarray
    tri_edges: np.ndarray
    star_ptr: np.ndarray
    star_tris: np.ndarray
    star_edge_ptr: np.ndarray
    star_edges: np.ndarray

    def __post_init__(self) -> None:
        for name in ("edges", "edge_tris", "tri_edges", "star_ptr", "star_tris", "star_edge_ptr", "star_edges"):
            getattr(self, name).setflags(write=False)

    @property
    def n_edges(self) -> int:
        return self.edges.shape[0]

    @property
    def interior_edges(self) -> np.ndarray:
        """Mask of edges shared by two triangles."""
        return (self.edge_tris[:, 0] >= 0) & (self.edge_tris[:, 1] >= 0)

    @property
    def boundary_edges(self) -> np.ndarray:
        return ~self.interior_edges

    @property
    def fan_size(self) -> np.ndarray:
        return np.diff(self.star_ptr)

    @property
    def closed_fan(self) -> np.ndarray:
        return np.diff(self.star_edge_ptr) == np.diff(self.star_ptr)

    def node_star(self, z: int) -> Tuple[np.ndarray, np.ndarray]:
        """(edges S_z, triangles of omega_z) of node z in anticlockwise order."""
        return (
            self.star_edges[self.star_edge_ptr[z] : self.star_edge_ptr[z + 1]],
            self.star_tris[self.star_ptr[z] : self.star_ptr[z + 1]],
        )

    def neighbours(self, z: int) -> np.ndarray:
        edges = self.edges[self.star_edges[self.star_edge_ptr[z] : self.star_edge_ptr[z + 1]]]
        return np.where(edges[:, 0] == z, edges[:, 1], edges[:, 0])

    def corner_nodes(self, mesh: Mesh, tol: float = 1e-12) -> np.ndarray:
        """Boundary nodes where the two boundary edges are not collinear."""
        corners = np.zeros(mesh.n_nodes, dtype=bool)
        for z in np.flatnonzero(~self.closed_fan):
            edges, _ = self.node_star(int(z))
            a = self.edges[edges[0]]
            b = self.edges[edges[-1]]
            u = mesh.nodes[a[0] + a[1] - z] - mesh.nodes[z]
            v = mesh.nodes[b[0] + b[1] - z] - mesh.nodes[z]
            cross = u[0] * v[1] - u[1] * v[0]
            corners[z] = abs(cross) > tol * np.linalg.norm(u) * np.linalg.norm(v)
        return corners


def _segment_pointers(owner: np.ndarray, n: int) -> np.ndarray:
    ptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(owner, minlength=n), out=ptr[1:])
    return ptr


def build_topology(mesh: Mesh) -> Topology:
    """Discover every edge once and order the star of every node."""
    tris = mesh.triangles
    m = mesh.n_triangles
    n = mesh.n_nodes

    # half-edge k of triangle t runs v[k+1] -> v[k+2], opposite to vertex k
    tail = tris[:, [1, 2, 0]].ravel()
    head = tris[:, [2, 0, 1]].ravel()
    owner = np.repeat(np.arange(m, dtype=np.int64), 3)
    lo = np.minimum(tail, head)
    hi = np.maximum(tail, head)
    keys, inverse, counts = np.unique(lo * n + hi, return_inverse=True, return_counts=True)
    inverse = inverse.ravel()
    if np.any(counts > 2):
        raise TopologyError(f"{int(np.sum(counts > 2))} edge(s) shared by more than two triangles")
    edges = np.column_stack([keys // n, keys % n])
    n_edges = edges.shape[0]

    forward = tail < head
    edge_tris = np.full((n_edges, 2), -1, dtype=np.int64)
    for side, mask in ((0, forward), (1, ~forward)):
        ids = inverse[mask]
        if np.any(np.bincount(ids, minlength=n_edges) > 1):
            raise TopologyError("inconsistently oriented triangles share an edge")
        edge_tris[ids, side] = owner[mask]
    tri_edges = inverse.reshape(m, 3)

    # triangle t around its vertex k starts at the edge (v[k], v[k+1])
    centre = tris.ravel()
    start_edge = tri_edges[:, [2, 0, 1]].ravel()
    nxt = tris[:, [1, 2, 0]].ravel()
    d = mesh.nodes[nxt] - mesh.nodes[centre]
    angle = np.mod(np.arctan2(d[:, 1], d[:, 0]), TWO_PI)
    order = np.lexsort((angle, centre))
    star_tris = owner[order]
    star_start = start_edge[order]
    star_ptr = _segment_pointers(centre, n)

    ecentre = edges.ravel()
    eother = edges[:, ::-1].ravel()
    eids = np.repeat(np.arange(n_edges, dtype=np.int64), 2)
    d = mesh.nodes[eother] - mesh.nodes[ecentre]
    angle = np.mod(np.arctan2(d[:, 1], d[:, 0]), TWO_PI)
    order = np.lexsort((angle, ecentre))
    star_edges = eids[order]
    star_edge_ptr = _segment_pointers(ecentre, n)

    is_boundary_edge = (edge_tris[:, 0] < 0) | (edge_tris[:, 1] < 0)
    n_fan = np.diff(star_ptr)
    n_star = np.diff(star_edge_ptr)
    if np.any(n_fan == 0):
        raise TopologyError(f"{int(np.sum(n_fan == 0))} node(s) belong to no triangle")
    open_nodes = np.flatnonzero(n_star != n_fan)
    for z in open_nodes:
        es = slice(star_edge_ptr[z], star_edge_ptr[z + 1])
        ts = slice(star_ptr[z], star_ptr[z + 1])
        local_edges = star_edges[es].copy()
        bnd = np.flatnonzero(is_boundary_edge[local_edges])
        if n_star[z] != n_fan[z] + 1 or bnd.size != 2:
            raise TopologyError(f"node {int(z)} has a non-manifold star")
        starts = star_start[ts]
        first = [k for k in bnd if local_edges[k] in starts]
        if len(first) != 1:
            raise TopologyError(f"node {int(z)} has a broken triangle fan")
        shift = int(first[0])
        star_edges[es] = np.roll(local_edges, -shift)
        tshift = int(np.flatnonzero(starts == local_edges[shift])[0])
        star_tris[ts] = np.roll(star_tris[ts], -tshift)

    topo = Topology(
        edges=edges,
        edge_tris=edge_tris,
        tri_edges=tri_edges,
        star_ptr=star_ptr,
        star_tris=star_tris,
        star_edge_ptr=star_edge_ptr,
        star_edges=star_edges,
    )
    logger.debug(
        "Topology: %d edges (%d interior), %d open fans",
        n_edges,
        int(np.sum(~is_boundary_edge)),
        open_nodes.size,
    )
    return topo
