"""Upper estimators and the Y indicator."""

from __future__ import annotations

from typing import Optional

import numpy as np

from ..errors import InvalidParameterError
from ..fem import DataNorms
from ..mesh import GeomTables, Topology
from .jumps import EdgeJump
from .regions import Region
from .report import EstimatorReport

UPPER_VARIANTS = ("eq2", "eq3")


def upper_estimator(
    geom: GeomTables,
    topo: Topology,
    jumps: EdgeJump,
    norms: DataNorms,
    variant: str,
    region: Optional[Region] = None,
) -> EstimatorReport:
    """eq2: jumps + ||H_T f|| + ||f - f^I||; eq3: jumps + ||h_T f|| + ||f - f^I|| + ||H_T osc(f^I;T)||."""
    if variant not in UPPER_VARIANTS:
        raise InvalidParameterError(f"unknown upper estimator {variant!r}, expected one of {UPPER_VARIANTS}")
    edges = topo.interior_edges if region is None else region.edges
    elements = None if region is None else region.elements
    jump_sq = float((geom.edge_patch_area * jumps.jump**2)[edges].sum())
    f_err = norms.total("f_err", elements)
    if variant == "eq2":
        volume = norms.total("Hf_vol", elements)
        total = jump_sq + volume**2 + f_err**2
        components = {"eq2_jump": np.sqrt(jump_sq), "eq2_Hf": volume, "eq2_f_err": f_err}
    else:
        volume = norms.total("hf_vol", elements)
        osc = norms.total("osc_fI", elements)
        total = jump_sq + volume**2 + f_err**2 + osc**2
        components = {"eq3_jump": np.sqrt(jump_sq), "eq3_hf": volume, "eq3_f_err": f_err, "eq3_osc": osc}
    return EstimatorReport(
        region="Omega" if region is None else region.name,
        upper={variant: float(np.sqrt(total))},
        upper_components={k: float(v) for k, v in components.items()},
        empty=region is not None and region.is_empty,
    )


def y_indicator(local_error_sq: np.ndarray, norms: DataNorms, region: Optional[Region] = None) -> float:
    """Y_D = ||grad(u_h - u)||_D + ||H_T osc(f;T)||_D."""
    elements = None if region is None else region.elements
    err = local_error_sq if elements is None else local_error_sq[elements]
    return float(np.sqrt(err.sum())) + norms.total("osc_f", elements)
