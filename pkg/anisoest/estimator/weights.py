from __future__ import annotations

import numpy as np

from ..errors import InvalidParameterError, NotApplicableError
from ..mesh import GeomTables, Topology

WEIGHT_VARIANTS = ("bubble", "uniform", "bubble_squared")


def edge_weights(variant: str, geom: GeomTables, topo: Topology) -> np.ndarray:
    """rho_S for every edge; boundary edges get 0.

    The bubble weights measure |S| against the largest triangle diameter in omega_S.
    """
    if variant not in WEIGHT_VARIANTS:
        raise InvalidParameterError(f"unknown weight variant {variant!r}, expected one of {WEIGHT_VARIANTS}")
    if variant == "uniform":
        rho = np.ones(topo.n_edges)
    else:
        rho = geom.edge_length / geom.edge_tri_diam
        if variant == "bubble_squared":
            rho = rho**2
    return np.where(topo.interior_edges, rho, 0.0)


def edge_weight(edge: int, variant: str, geom: GeomTables, topo: Topology) -> float:
    if not topo.interior_edges[edge]:
        raise NotApplicableError(f"edge {edge} lies on the boundary and carries no weight")
    if variant not in WEIGHT_VARIANTS:
        raise InvalidParameterError(f"unknown weight variant {variant!r}")
    if variant == "uniform":
        return 1.0
    ratio = float(geom.edge_length[edge] / geom.edge_tri_diam[edge])
    return ratio**2 if variant == "bubble_squared" else ratio
