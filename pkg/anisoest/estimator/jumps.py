"""Normal-derivative jumps of a P1 field across interior edges."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..fem import DiscreteField
from ..mesh import Mesh, Topology


@dataclass(frozen=True, eq=False)
class EdgeJump:
    """Signed J_S = nu_S . (grad u_h|left - grad u_h|right); zero on boundary edges.

    nu_S is the unit normal of a -> b (a < b) pointing into the right triangle.
    """

    jump: np.ndarray
    normal: np.ndarray
    interior: np.ndarray

    @property
    def magnitude(self) -> np.ndarray:
        return np.abs(self.jump)

    def scaled(self, factor: float) -> "EdgeJump":
        return EdgeJump(factor * self.jump, self.normal, self.interior)


def edge_normals(mesh: Mesh, topo: Topology) -> np.ndarray:
    d = mesh.nodes[topo.edges[:, 1]] - mesh.nodes[topo.edges[:, 0]]
    return np.column_stack([d[:, 1], -d[:, 0]]) / np.linalg.norm(d, axis=1)[:, None]


def _sides(topo: Topology, grads: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    interior = topo.interior_edges
    left = grads[np.maximum(topo.edge_tris[:, 0], 0)]
    right = grads[np.maximum(topo.edge_tris[:, 1], 0)]
    return left, right, interior


def jump_residuals(mesh: Mesh, topo: Topology, u_h: DiscreteField) -> EdgeJump:
    grads = u_h.gradients()
    normal = edge_normals(mesh, topo)
    left, right, interior = _sides(topo, grads)
    jump = np.where(interior, np.einsum("ed,ed->e", normal, left - right), 0.0)
    return EdgeJump(jump=jump, normal=normal, interior=interior)


def normalized_jumps(topo: Topology, u_h: DiscreteField, jumps: EdgeJump, edges: np.ndarray, xi: np.ndarray) -> np.ndarray:
    """J'_S: jump of d u_h / d xi across S, measured from the -xi side to the +xi side.

    The left triangle lies on the -nu side of S, so it is the +xi side when nu . xi < 0.
    """
    edges = np.asarray(edges, dtype=np.int64)
    grads = u_h.gradients()
    left, right, _ = _sides(topo, grads)
    nu_xi = jumps.normal[edges] @ xi
    sign = np.where(nu_xi < 0.0, 1.0, -1.0)
    return sign * ((left[edges] - right[edges]) @ xi)


def fan_jumps(topo: Topology, grads: np.ndarray, nodes: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Anticlockwise gradient jumps across every star edge of ``nodes``.

    The jump across e_i is grad u_h on the triangle after e_i minus the one
    before it; on an open fan the missing neighbour contributes zero, which
    is u_h extended by zero outside the domain.

    Returns (owner, edge id, jump vector) per star entry, owner indexing ``nodes``.
    """
    nodes = np.asarray(nodes, dtype=np.int64)
    e_lo = topo.star_edge_ptr[nodes]
    e_cnt = topo.star_edge_ptr[nodes + 1] - e_lo
    t_lo = topo.star_ptr[nodes]
    t_cnt = topo.star_ptr[nodes + 1] - t_lo
    closed = e_cnt == t_cnt

    owner = np.repeat(np.arange(nodes.size), e_cnt)
    start = np.repeat(np.cumsum(e_cnt) - e_cnt, e_cnt)
    pos = np.arange(owner.size) - start
    edge_ids = topo.star_edges[e_lo[owner] + pos]

    cnt = t_cnt[owner]
    has_after = pos < cnt
    after = topo.star_tris[t_lo[owner] + np.minimum(pos, cnt - 1)]
    before_pos = np.where(pos >= 1, pos - 1, cnt - 1)
    has_before = (pos >= 1) | closed[owner]
    before = topo.star_tris[t_lo[owner] + before_pos]

    jump = np.where(has_after[:, None], grads[after], 0.0) - np.where(has_before[:, None], grads[before], 0.0)
    return owner, edge_ids, jump
