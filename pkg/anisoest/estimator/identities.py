"""Telescoping vertex identity and the jump-difference bound along paths."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..errors import InvalidParameterError, TopologyError
from ..fem import DiscreteField
from ..mesh import GeomTables, Mesh, Topology
from .jumps import EdgeJump, fan_jumps, normalized_jumps
from .paths import AnisoPath

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class VertexResidual:
    nodes: np.ndarray
    residual: np.ndarray
    scale: float

    @property
    def max_residual(self) -> float:
        return float(self.residual.max()) if self.residual.size else 0.0

    @property
    def relative(self) -> float:
        return self.max_residual / self.scale if self.scale > 0 else self.max_residual


def vertex_identity_residual(
    mesh: Mesh, topo: Topology, u_h: DiscreteField, include_boundary: bool = False
) -> VertexResidual:
    """|sum of anticlockwise gradient jumps around z| for every interior node.

    With ``include_boundary`` the open fans of boundary nodes are closed by
    extending u_h by zero outside the domain.
    """
    open_interior = ~topo.closed_fan & ~mesh.boundary
    if np.any(open_interior):
        raise TopologyError(f"interior node {int(np.flatnonzero(open_interior)[0])} has an open triangle fan")
    nodes = np.arange(mesh.n_nodes) if include_boundary else np.flatnonzero(~mesh.boundary)
    grads = u_h.gradients()
    scale = float(np.linalg.norm(grads, axis=1).max()) if grads.size else 0.0
    if nodes.size == 0:
        return VertexResidual(nodes, np.zeros(0), scale)
    owner, _, jump = fan_jumps(topo, grads, nodes)
    starts = np.concatenate([[0], np.flatnonzero(np.diff(owner)) + 1])
    sums = np.add.reduceat(jump, starts, axis=0)
    return VertexResidual(nodes, np.linalg.norm(sums, axis=1), scale)


@dataclass(frozen=True, eq=False)
class JumpDifferenceReport:
    """Per path node: numerator |J'_{S+} - J'_{S-}| (boundary terms included), denominator, ratio.

    Ratios of zero-denominator nodes are NaN and listed in ``zero_denominator``.
    """

    nodes: np.ndarray
    numerator: np.ndarray
    denominator: np.ndarray
    ratio: np.ndarray
    on_boundary: np.ndarray
    j_prime: np.ndarray

    @property
    def zero_denominator(self) -> np.ndarray:
        return self.nodes[self.denominator == 0.0]

    @property
    def max_ratio(self) -> float:
        finite = self.ratio[np.isfinite(self.ratio)]
        return float(finite.max()) if finite.size else 0.0

    @property
    def max_boundary_ratio(self) -> float:
        sel = self.ratio[self.on_boundary & np.isfinite(self.ratio)]
        return float(sel.max()) if sel.size else 0.0

    @property
    def max_zero_denominator_numerator(self) -> float:
        sel = self.numerator[self.denominator == 0.0]
        return float(sel.max()) if sel.size else 0.0


def jump_difference_check(
    mesh: Mesh,
    topo: Topology,
    geom: GeomTables,
    u_h: DiscreteField,
    jumps: EdgeJump,
    path: AnisoPath,
    nodes: Optional[Sequence[int]] = None,
) -> JumpDifferenceReport:
    """r_z = |J'_{S+} - J'_{S-}| / (h_z/H_z sum_{S in gamma_z minus P} |J_S|) for the nodes of ``path``.

    At a boundary node the xi-components of the zero-extension jumps across
    the two boundary edges join the numerator, so with homogeneous data the
    missing J'_{S-} counts as zero.
    """
    if nodes is None:
        check = path.nodes
    else:
        check = np.asarray(nodes, dtype=np.int64)
        missing = np.setdiff1d(check, path.nodes)
        if missing.size:
            raise InvalidParameterError(f"node {int(missing[0])} is not on the path")
    on_path = np.zeros(topo.n_edges, dtype=bool)
    on_path[path.edges] = True

    grads = u_h.gradients()
    owner, edge_ids, jump = fan_jumps(topo, grads, check)
    proj = jump @ path.xi
    boundary_edge = ~topo.interior_edges[edge_ids]
    lhs = on_path[edge_ids] | boundary_edge
    numerator = np.abs(np.bincount(owner, weights=np.where(lhs, proj, 0.0), minlength=check.size))
    others = np.where(~lhs, np.abs(jumps.jump[edge_ids]), 0.0)
    denominator = geom.node_h[check] / geom.node_diam[check] * np.bincount(owner, weights=others, minlength=check.size)
    ratio = np.full(check.size, np.nan)
    nonzero = denominator > 0.0
    ratio[nonzero] = numerator[nonzero] / denominator[nonzero]
    logger.debug("Jump difference on %d path nodes: max ratio %.3g", check.size, np.nanmax(ratio) if nonzero.any() else 0.0)
    return JumpDifferenceReport(
        nodes=check,
        numerator=numerator,
        denominator=denominator,
        ratio=ratio,
        on_boundary=mesh.boundary[check],
        j_prime=normalized_jumps(topo, u_h, jumps, path.edges, path.xi),
    )
