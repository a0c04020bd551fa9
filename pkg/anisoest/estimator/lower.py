"""Lower estimators E and E-circle (short edges only)."""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from ..fem import DataNorms
from ..mesh import GeomTables, Topology
from .jumps import EdgeJump
from .regions import Region
from .report import EstimatorReport
from .weights import edge_weights

logger = logging.getLogger(__name__)

TIE_MARGIN = 1e-12


def short_edges(geom: GeomTables, topo: Topology, c_short: float = 0.5) -> np.ndarray:
    """Interior edges with |S| < c_short * diam(omega_S); exact ties are not short."""
    threshold = c_short * geom.edge_patch_diam * (1.0 - TIE_MARGIN)
    return topo.interior_edges & (geom.edge_length < threshold)


def weighted_jump_sq(geom: GeomTables, topo: Topology, jumps: EdgeJump, variant: str) -> np.ndarray:
    """rho_S |omega_S| J_S^2 per edge."""
    return edge_weights(variant, geom, topo) * geom.edge_patch_area * jumps.jump**2


def short_edge_estimator(
    geom: GeomTables,
    topo: Topology,
    jumps: EdgeJump,
    short: np.ndarray,
    variant: str,
    region: Optional[Region] = None,
) -> float:
    terms = weighted_jump_sq(geom, topo, jumps, variant)
    mask = short if region is None else short & region.edges
    return float(np.sqrt(terms[mask].sum()))


def lower_estimator(
    geom: GeomTables,
    topo: Topology,
    jumps: EdgeJump,
    norms: DataNorms,
    variant: str,
    region: Optional[Region] = None,
    short: Optional[np.ndarray] = None,
) -> EstimatorReport:
    """E_D = {sum rho_S |omega_S| J_S^2 + ||h_T f||^2_D}^(1/2) and, given ``short``, E-circle_D."""
    edges = topo.interior_edges if region is None else region.edges
    elements = None if region is None else region.elements
    name = "Omega" if region is None else region.name
    if region is not None and region.is_empty:
        logger.debug("Region %s is empty", name)
        zero = {variant: 0.0}
        return EstimatorReport(region=name, E=zero, E_jump=dict(zero), E0=dict(zero), E_volume=0.0, empty=True)

    jump_sq = float(weighted_jump_sq(geom, topo, jumps, variant)[edges].sum())
    volume = norms.total("hf_vol", elements)
    report = EstimatorReport(
        region=name,
        E={variant: float(np.sqrt(jump_sq + volume**2))},
        E_jump={variant: float(np.sqrt(jump_sq))},
        E_volume=volume,
    )
    if short is not None:
        report.E0[variant] = short_edge_estimator(geom, topo, jumps, short, variant, region)
    return report
