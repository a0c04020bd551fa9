"""Fitted constants of the local bubble-function lower bounds."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from ..fem import DataNorms, DiscreteField
from ..fem.norms import p1_square_integrals
from ..mesh import GeomTables, Topology
from .jumps import EdgeJump
from .lower import weighted_jump_sq

logger = logging.getLogger(__name__)


@dataclass
class BubbleConstants:
    """C_f = max_T h_T||f^I||_T / (||grad(u_h - u)||_T + h_T||f - f^I||_T).

    C_J[variant] = max_S rho_S |omega_S| J_S^2 / sum over omega_S of
    (||grad(u_h - u)||_T^2 + ||h_T(f - f^I)||_T^2). Entries with zero
    right-hand side and nonzero left-hand side count as anomalies.
    C_J_short restricts the same maximum to short edges.
    """

    C_f: float
    C_J: Dict[str, float] = field(default_factory=dict)
    C_J_short: Dict[str, float] = field(default_factory=dict)
    anomalies: int = 0


def _fit(lhs: np.ndarray, rhs: np.ndarray, tiny: float) -> Tuple[float, int]:
    """Largest lhs/rhs over entries with rhs above ``tiny``; values below it count as zero."""
    nonzero = rhs > tiny
    anomalies = int(np.sum(~nonzero & (lhs > tiny)))
    constant = float((lhs[nonzero] / rhs[nonzero]).max()) if nonzero.any() else 0.0
    return constant, anomalies


def bubble_bound_check(
    geom: GeomTables,
    topo: Topology,
    u_h: DiscreteField,
    fI: DiscreteField,
    jumps: EdgeJump,
    norms: DataNorms,
    local_error_sq: np.ndarray,
    variants: Sequence[str] = ("bubble", "uniform"),
    short: Optional[np.ndarray] = None,
) -> BubbleConstants:
    mesh = fI.mesh
    grad_sq = float((u_h.gradients() ** 2).sum(axis=1).max(initial=0.0))
    f_scale = float(np.abs(fI.values).max(initial=0.0))

    fI_sq = p1_square_integrals(fI.values, mesh, geom.tri_area)
    lhs_f = geom.tri_h * np.sqrt(fI_sq)
    rhs_f = np.sqrt(local_error_sq) + np.sqrt(norms.elementwise["hf_err"])
    ref_f = float((geom.tri_h * np.sqrt(geom.tri_area)).max()) * f_scale + float(
        np.sqrt(geom.tri_area.max() * grad_sq)
    )
    C_f, anomalies = _fit(lhs_f, rhs_f, 1e-12 * ref_f)

    interior = np.flatnonzero(topo.interior_edges)
    per_tri = local_error_sq + norms.elementwise["hf_err"]
    rhs_J = per_tri[topo.edge_tris[interior, 0]] + per_tri[topo.edge_tris[interior, 1]]
    ref_J = float(geom.edge_patch_area.max()) * (grad_sq + (f_scale * float(geom.tri_h.max())) ** 2)
    on_short = None if short is None else np.asarray(short, dtype=bool)[interior]
    C_J: Dict[str, float] = {}
    C_J_short: Dict[str, float] = {}
    for variant in variants:
        lhs_J = weighted_jump_sq(geom, topo, jumps, variant)[interior]
        C_J[variant], bad = _fit(lhs_J, rhs_J, 1e-24 * ref_J)
        anomalies += bad
        if on_short is not None:
            C_J_short[variant], _ = _fit(lhs_J[on_short], rhs_J[on_short], 1e-24 * ref_J)
    if anomalies:
        logger.warning("Bubble bound check: %d entries with zero right-hand side", anomalies)
    return BubbleConstants(C_f=C_f, C_J=C_J, C_J_short=C_J_short, anomalies=anomalies)
