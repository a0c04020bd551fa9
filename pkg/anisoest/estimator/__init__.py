from .bubble import BubbleConstants, bubble_bound_check
from .classify import NodeClass, classify_nodes, local_orientation_ratio
from .dump import edge_dump
from .identities import JumpDifferenceReport, VertexResidual, jump_difference_check, vertex_identity_residual
from .jumps import EdgeJump, jump_residuals, normalized_jumps
from .lower import lower_estimator, short_edge_estimator, short_edges
from .paths import AnisoPath, extract_paths, structured_line_path
from .regions import Region
from .report import REPORT_COLUMNS, EstimatorReport
from .upper import upper_estimator, y_indicator
from .weights import WEIGHT_VARIANTS, edge_weight, edge_weights

__all__ = [
    "BubbleConstants",
    "bubble_bound_check",
    "NodeClass",
    "classify_nodes",
    "local_orientation_ratio",
    "edge_dump",
    "JumpDifferenceReport",
    "VertexResidual",
    "jump_difference_check",
    "vertex_identity_residual",
    "EdgeJump",
    "jump_residuals",
    "normalized_jumps",
    "lower_estimator",
    "short_edge_estimator",
    "short_edges",
    "AnisoPath",
    "extract_paths",
    "structured_line_path",
    "Region",
    "REPORT_COLUMNS",
    "EstimatorReport",
    "upper_estimator",
    "y_indicator",
    "WEIGHT_VARIANTS",
    "edge_weight",
    "edge_weights",
]
