"""One-dimensional grids used as tensor factors of the 2D meshes."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..errors import InvalidParameterError

logger = logging.getLogger(__name__)

GRID_KINDS = ("uniform", "scaled", "points", "shishkin")


@dataclass(frozen=True, eq=False)
class Grid1D:
    """Strictly increasing points 0 = x_0 < ... < x_n = L."""

    points: np.ndarray
    kind: str = "points"

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 1 or pts.size < 2:
            raise InvalidParameterError("a grid needs at least two points")
        if pts[0] != 0.0:
            raise InvalidParameterError(f"grid must start at 0, got {pts[0]!r}")
        if not np.all(np.diff(pts) > 0):
            raise InvalidParameterError("grid points must be strictly increasing")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.size - 1

    @property
    def length(self) -> float:
        return float(self.points[-1])

    @property
    def spacing(self) -> np.ndarray:
        return np.diff(self.points)


def _uniform(n: int, length: float) -> np.ndarray:
    pts = np.arange(n + 1, dtype=float) * (length / n)
    pts[-1] = length
    return pts


def build_grid_1d(
    kind: str,
    n: int,
    length: float = 1.0,
    *,
    eps: Optional[float] = None,
    sigma: float = 2.0,
    points: Optional[Sequence[float]] = None,
) -> Grid1D:
    """Build a 1D grid.

    ``uniform`` spans [0, 1] and ``scaled`` spans [0, length] with n equal cells.
    ``points`` takes explicit coordinates. ``shishkin`` puts n/2 equal cells on
    [0, tau] and n/2 on [tau, length] with tau = min(length/2, sigma*eps*ln n).
    """
    if kind not in GRID_KINDS:
        raise InvalidParameterError(f"unknown grid kind {kind!r}, expected one of {GRID_KINDS}")
    if kind == "points":
        if points is None:
            raise InvalidParameterError("grid kind 'points' needs explicit points")
        return Grid1D(np.asarray(points, dtype=float), kind)

    if n < 1:
        raise InvalidParameterError(f"grid needs n >= 1 cells, got {n}")
    if not length > 0:
        raise InvalidParameterError(f"grid length must be positive, got {length}")

    if kind == "uniform":
        return Grid1D(_uniform(n, 1.0), kind)
    if kind == "scaled":
        return Grid1D(_uniform(n, length), kind)

    if eps is None or not eps > 0:
        raise InvalidParameterError("shishkin grid needs eps > 0")
    if n % 2:
        raise InvalidParameterError(f"shishkin grid needs an even cell count, got {n}")
    tau = min(length / 2.0, sigma * eps * math.log(n))
    half = n // 2
    fine = _uniform(half, tau)
    coarse = tau + _uniform(half, length - tau)
    coarse[-1] = length
    logger.debug("Shishkin transition point tau=%g for n=%d eps=%g", tau, n, eps)
    return Grid1D(np.concatenate([fine, coarse[1:]]), kind)
