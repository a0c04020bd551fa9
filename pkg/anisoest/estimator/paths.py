"""Local anisotropic paths: chains of short edges through anisotropic nodes."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..errors import InvalidParameterError
from ..mesh import GeomTables, Mesh, Topology
from ..mesh.geometry import star_vertices
from .classify import NodeClass, local_orientation_ratio

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class AnisoPath:
    """Ordered nodes joined by ``edges``; ``xi`` is normal and ``eta`` tangent to the path."""

    nodes: np.ndarray
    edges: np.ndarray
    H_P: float
    xi: np.ndarray
    eta: np.ndarray
    boundary_ends: Tuple[bool, bool]
    corner_ends: Tuple[bool, bool]
    orientation_ratio: float = math.nan

    @property
    def interior_nodes(self) -> np.ndarray:
        return self.nodes[1:-1]

    @property
    def endpoints(self) -> Tuple[int, int]:
        return int(self.nodes[0]), int(self.nodes[-1])

    @property
    def touches_corner(self) -> bool:
        return any(self.corner_ends)


def path_frame(points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """(xi, eta): normal and direction of the least-squares line through ``points``.

    xi is oriented with a positive x component (positive y when vertical).
    """
    centred = points - points.mean(axis=0)
    _, _, vt = np.linalg.svd(centred, full_matrices=False)
    eta = vt[0]
    xi = np.array([-eta[1], eta[0]])
    if xi[0] < 0 or (xi[0] == 0 and xi[1] < 0):
        xi = -xi
    eta = np.array([xi[1], -xi[0]])
    if eta[1] < 0 or (eta[1] == 0 and eta[0] < 0):
        eta = -eta
    return xi, eta


def find_edges(topo: Topology, n_nodes: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Edge ids of node pairs (a, b); raises if a pair is not an edge."""
    keys = topo.edges[:, 0] * n_nodes + topo.edges[:, 1]
    wanted = np.minimum(a, b) * n_nodes + np.maximum(a, b)
    idx = np.searchsorted(keys, wanted)
    idx = np.minimum(idx, keys.size - 1)
    if np.any(keys[idx] != wanted):
        raise InvalidParameterError("node pair is not a mesh edge")
    return idx


def make_path(
    mesh: Mesh,
    topo: Topology,
    geom: GeomTables,
    corners: np.ndarray,
    stars: np.ndarray,
    nodes: List[int],
    edges: List[int],
) -> AnisoPath:
    """Path record with its frame; orientation_ratio is the worst node ratio in the (xi, eta) frame."""
    nodes_arr = np.asarray(nodes, dtype=np.int64)
    xi, eta = path_frame(mesh.nodes[nodes_arr])
    ratios = local_orientation_ratio(mesh, topo, geom, np.vstack([xi, eta]), nodes_arr, stars)
    ends = (int(nodes_arr[0]), int(nodes_arr[-1]))
    return AnisoPath(
        nodes=nodes_arr,
        edges=np.asarray(edges, dtype=np.int64),
        H_P=float(geom.node_diam[nodes_arr[0]]),
        xi=xi,
        eta=eta,
        boundary_ends=(bool(mesh.boundary[ends[0]]), bool(mesh.boundary[ends[1]])),
        corner_ends=(bool(corners[ends[0]]), bool(corners[ends[1]])),
        orientation_ratio=float(ratios.max()),
    )


def structured_line_path(mesh: Mesh, topo: Topology, geom: GeomTables, i: int) -> AnisoPath:
    """The vertical grid line x = x_i, i = 1..n-1, of a structured mesh as a path."""
    if not mesh.structured:
        raise InvalidParameterError("structured line paths need a tensor mesh with provenance")
    nx, ny = mesh.gx.n, mesh.gy.n
    if not 1 <= i <= nx - 1:
        raise InvalidParameterError(f"line index {i} outside 1..{nx - 1}")
    nodes = np.array([mesh.node_id(i, j) for j in range(ny + 1)])
    edges = find_edges(topo, mesh.n_nodes, nodes[:-1], nodes[1:])
    stars = star_vertices(mesh, topo)
    return make_path(mesh, topo, geom, topo.corner_nodes(mesh), stars, nodes.tolist(), edges.tolist())


def extract_paths(
    mesh: Mesh,
    topo: Topology,
    geom: GeomTables,
    classes: NodeClass,
    short: np.ndarray,
    kappa_h: float = 2.0,
) -> List[AnisoPath]:
    """Maximal chains of short edges between anisotropic nodes.

    Chains start at nodes with a candidate-edge count other than two and end
    at the next such node. An edge whose far node leaves [H_P/kappa_h,
    kappa_h*H_P] closes the chain and is left out; H_P is the H_z of the first
    node. Closed loops are opened at their smallest node id.
    """
    cand = short & classes.anisotropic[topo.edges[:, 0]] & classes.anisotropic[topo.edges[:, 1]]
    cand_ids = np.flatnonzero(cand)
    if cand_ids.size == 0:
        return []
    n = mesh.n_nodes
    inc_node = np.concatenate([topo.edges[cand_ids, 0], topo.edges[cand_ids, 1]])
    inc_edge = np.concatenate([cand_ids, cand_ids])
    order = np.lexsort((inc_edge, inc_node))
    inc_edge = inc_edge[order]
    degree = np.bincount(inc_node, minlength=n)
    ptr = np.concatenate([[0], np.cumsum(degree)])
    H = geom.node_diam
    lo, hi = 1.0 / kappa_h, kappa_h
    visited = np.zeros(topo.n_edges, dtype=bool)
    chains: List[Tuple[List[int], List[int]]] = []

    def incident(z: int) -> np.ndarray:
        return inc_edge[ptr[z] : ptr[z + 1]]

    def walk(z: int, e: int) -> None:
        nodes, edges = [z], []
        seen = {z}
        H0 = H[z]
        while True:
            visited[e] = True
            a, b = topo.edges[e]
            w = int(b if a == z else a)
            if w in seen:
                break
            seen.add(w)
            if lo * H0 <= H[w] <= hi * H0:
                nodes.append(w)
                edges.append(e)
            else:
                if edges:
                    chains.append((nodes, edges))
                nodes, edges, H0 = [w], [], H[w]
                seen = {w}
            if degree[w] != 2:
                break
            ahead = [int(f) for f in incident(w) if not visited[f]]
            if not ahead:
                break
            z, e = w, ahead[0]
        if edges:
            chains.append((nodes, edges))

    terminals = np.flatnonzero((degree > 0) & (degree != 2))
    for z in terminals:
        for e in incident(int(z)):
            if not visited[e]:
                walk(int(z), int(e))
    for z in np.flatnonzero(degree == 2):
        for e in incident(int(z)):
            if not visited[e]:
                walk(int(z), int(e))

    corners = topo.corner_nodes(mesh)
    stars = star_vertices(mesh, topo)
    paths = [make_path(mesh, topo, geom, corners, stars, nodes, edges) for nodes, edges in chains]
    logger.debug("Extracted %d anisotropic paths from %d candidate edges", len(paths), cand_ids.size)
    return paths
