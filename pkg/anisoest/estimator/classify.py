"""Anisotropic and regular node classification."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..mesh import GeomTables, Mesh, Topology
from ..mesh.geometry import CHUNK_NODES, star_vertices
from .lower import TIE_MARGIN

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class NodeClass:
    """Per-node flags; a node may be both anisotropic and regular."""

    anisotropic: np.ndarray
    regular: np.ndarray
    ratio: np.ndarray
    area_ratio: np.ndarray
    min_angle: np.ndarray
    orientation_ratio: np.ndarray
    c0: float
    c_uni: float

    @property
    def n_anisotropic(self) -> int:
        return int(self.anisotropic.sum())


def triangle_min_angles(geom: GeomTables, topo: Topology) -> np.ndarray:
    """Smallest interior angle (degrees) of each triangle, from its edge lengths."""
    L = geom.edge_length[topo.tri_edges]
    a, b, c = L[:, 0], L[:, 1], L[:, 2]
    cos_a = (b * b + c * c - a * a) / (2.0 * b * c)
    cos_b = (a * a + c * c - b * b) / (2.0 * a * c)
    cos_c = (a * a + b * b - c * c) / (2.0 * a * b)
    cos_max = np.clip(np.maximum(np.maximum(cos_a, cos_b), cos_c), -1.0, 1.0)
    return np.degrees(np.arccos(cos_max))


def classify_nodes(
    mesh: Mesh,
    topo: Topology,
    geom: GeomTables,
    c0: float = 0.5,
    c_uni: Optional[float] = None,
    min_angle_deg: float = 20.0,
) -> NodeClass:
    """Anisotropic: h_z < c0 H_z and min |T| >= c_uni |omega_z|. Regular: all fan angles >= min_angle_deg."""
    starts = topo.star_ptr[:-1]
    if c_uni is None:
        c_uni = 1.0 / (2.0 * float(topo.fan_size.max()))
    ratio = geom.node_h / geom.node_diam
    min_area = np.minimum.reduceat(geom.tri_area[topo.star_tris], starts)
    area_ratio = min_area / geom.node_area
    min_angle = np.minimum.reduceat(triangle_min_angles(geom, topo)[topo.star_tris], starts)

    anisotropic = (ratio < c0 * (1.0 - TIE_MARGIN)) & (area_ratio >= c_uni)
    regular = min_angle >= min_angle_deg * (1.0 - TIE_MARGIN)
    logger.debug(
        "Classified %d nodes: %d anisotropic, %d regular", mesh.n_nodes, int(anisotropic.sum()), int(regular.sum())
    )
    return NodeClass(
        anisotropic=anisotropic,
        regular=regular,
        ratio=ratio,
        area_ratio=area_ratio,
        min_angle=min_angle,
        orientation_ratio=local_orientation_ratio(mesh, topo, geom),
        c0=c0,
        c_uni=c_uni,
    )


def local_orientation_ratio(
    mesh: Mesh,
    topo: Topology,
    geom: GeomTables,
    frame: Optional[np.ndarray] = None,
    nodes: Optional[np.ndarray] = None,
    stars: Optional[np.ndarray] = None,
) -> np.ndarray:
    """|omega*_z| / |omega_z| with omega*_z the smallest frame-aligned rectangle holding omega_z.

    ``frame`` is a 2x2 matrix whose rows are the rectangle axes; the default is the coordinate axes.
    ``nodes`` restricts the result to those nodes; ``stars`` reuses a star_vertices table.
    """
    axes = np.eye(2) if frame is None else np.asarray(frame, dtype=float)
    stars = star_vertices(mesh, topo) if stars is None else stars
    area = geom.node_area
    if nodes is not None:
        stars, area = stars[nodes], area[nodes]
    box = np.empty(stars.shape[0])
    for start in range(0, stars.shape[0], CHUNK_NODES):
        block = stars[start : start + CHUNK_NODES]
        valid = block >= 0
        coords = mesh.nodes[np.where(valid, block, 0)] @ axes.T
        lo = np.where(valid[:, :, None], coords, np.inf).min(axis=1)
        hi = np.where(valid[:, :, None], coords, -np.inf).max(axis=1)
        box[start : start + CHUNK_NODES] = np.prod(hi - lo, axis=1)
    return box / area
