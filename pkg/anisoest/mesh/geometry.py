"""Per-triangle, per-edge and per-node geometric quantities."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..errors import GeometryError
from .tensor import Mesh, signed_areas
from .topology import Topology

logger = logging.getLogger(__name__)

CHUNK_NODES = 1 << 14


@dataclass(frozen=True, eq=False)
class GeomTables:
    """Triangle: area, H_T, h_T. Edge: |S|, |omega_S|, diam(omega_S), max H_T over omega_S. Node: |omega_z|, H_z, h_z.

    Edge patch values of boundary edges describe their single triangle.
    """

    tri_area: np.ndarray
    tri_diam: np.ndarray
    tri_h: np.ndarray
    edge_length: np.ndarray
    edge_patch_area: np.ndarray
    edge_patch_diam: np.ndarray
    edge_tri_diam: np.ndarray
    node_area: np.ndarray
    node_diam: np.ndarray
    node_h: np.ndarray

    def __post_init__(self) -> None:
        for value in vars(self).values():
            value.setflags(write=False)


def star_vertices(mesh: Mesh, topo: Topology) -> np.ndarray:
    """(n, D+1) node ids of z followed by its neighbours, padded with -1."""
    counts = np.diff(topo.star_edge_ptr)
    width = int(counts.max()) + 1
    out = np.full((mesh.n_nodes, width), -1, dtype=np.int64)
    out[:, 0] = np.arange(mesh.n_nodes)
    centre = np.repeat(np.arange(mesh.n_nodes), counts)
    slot = np.arange(topo.star_edges.size) - topo.star_edge_ptr[centre] + 1
    ends = topo.edges[topo.star_edges]
    out[centre, slot] = np.where(ends[:, 0] == centre, ends[:, 1], ends[:, 0])
    return out


def _padded_diameter(points: np.ndarray, valid: np.ndarray) -> np.ndarray:
    diff = points[:, :, None, :] - points[:, None, :, :]
    dist = np.sqrt(np.einsum("nijk,nijk->nij", diff, diff))
    pair_ok = valid[:, :, None] & valid[:, None, :]
    return np.where(pair_ok, dist, 0.0).max(axis=(1, 2))


def node_diameters(mesh: Mesh, stars: np.ndarray) -> np.ndarray:
    """diam(omega_z): max pairwise distance among the star vertices."""
    out = np.empty(mesh.n_nodes)
    for lo in range(0, mesh.n_nodes, CHUNK_NODES):
        block = stars[lo : lo + CHUNK_NODES]
        valid = block >= 0
        pts = mesh.nodes[np.where(valid, block, 0)]
        out[lo : lo + CHUNK_NODES] = _padded_diameter(pts, valid)
    return out


def compute_geometry(mesh: Mesh, topo: Topology) -> GeomTables:
    """Exact geometric tables for a mesh and its topology."""
    area = signed_areas(mesh.nodes, mesh.triangles)
    if np.any(area <= 0.0):
        raise GeometryError("degenerate triangle with non-positive area")

    elen_all = np.linalg.norm(mesh.nodes[topo.edges[:, 1]] - mesh.nodes[topo.edges[:, 0]], axis=1)
    tri_diam = elen_all[topo.tri_edges].max(axis=1)
    tri_h = 2.0 * area / tri_diam

    left, right = topo.edge_tris[:, 0], topo.edge_tris[:, 1]
    a_left = np.where(left >= 0, area[np.maximum(left, 0)], 0.0)
    a_right = np.where(right >= 0, area[np.maximum(right, 0)], 0.0)
    patch_area = a_left + a_right
    edge_tri_diam = np.maximum(
        np.where(left >= 0, tri_diam[np.maximum(left, 0)], 0.0),
        np.where(right >= 0, tri_diam[np.maximum(right, 0)], 0.0),
    )

    # the patch vertices are the two edge ends plus the two opposite vertices
    def _opposite(t: np.ndarray) -> np.ndarray:
        tt = np.maximum(t, 0)
        verts = mesh.triangles[tt]
        own = topo.tri_edges[tt] == np.arange(topo.n_edges)[:, None]
        return verts[np.arange(topo.n_edges), own.argmax(axis=1)]

    a = mesh.nodes[topo.edges[:, 0]]
    b = mesh.nodes[topo.edges[:, 1]]
    c_id = np.where(left >= 0, _opposite(left), _opposite(right))
    d_id = np.where(right >= 0, _opposite(right), c_id)
    c = mesh.nodes[c_id]
    d = mesh.nodes[d_id]
    pairs = [(a, c), (a, d), (b, c), (b, d), (c, d)]
    patch_diam = elen_all.copy()
    for p, q in pairs:
        np.maximum(patch_diam, np.linalg.norm(p - q, axis=1), out=patch_diam)

    node_area = np.bincount(mesh.triangles.ravel(), weights=np.repeat(area, 3), minlength=mesh.n_nodes)
    node_diam = node_diameters(mesh, star_vertices(mesh, topo))
    node_h = node_area / node_diam

    geom = GeomTables(
        tri_area=area,
        tri_diam=tri_diam,
        tri_h=tri_h,
        edge_length=elen_all,
        edge_patch_area=patch_area,
        edge_patch_diam=patch_diam,
        edge_tri_diam=edge_tri_diam,
        node_area=node_area,
        node_diam=node_diam,
        node_h=node_h,
    )
    logger.debug("Geometry: total area %.17g, min h_T %.3e", float(area.sum()), float(tri_h.min()))
    return geom
