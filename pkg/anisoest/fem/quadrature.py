"""Symmetric quadrature rules on the reference triangle.

Points are barycentric triples and weights sum to one, so the integral over
a triangle T is ``|T| * sum(w * g(points))``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Tuple

import numpy as np

from ..errors import InvalidParameterError

_A4, _W4A = 0.445948490915965, 0.223381589678011
_B4, _W4B = 0.091576213509771, 0.109951743655322


def _orbit(a: float) -> np.ndarray:
    c = 1.0 - 2.0 * a
    return np.array([[a, a, c], [a, c, a], [c, a, a]])


@lru_cache(maxsize=None)
def quadrature_rule(degree: int) -> Tuple[np.ndarray, np.ndarray]:
    """Barycentric points and weights of a rule exact up to ``degree``.

    Degree 2 is the edge-midpoint rule, degree 4 the six-point rule.

    Raises
    ------
    InvalidParameterError
        If the requested degree is not supported
    """
    if degree in (1, 2):
        points = np.array([[0.0, 0.5, 0.5], [0.5, 0.0, 0.5], [0.5, 0.5, 0.0]])
        weights = np.full(3, 1.0 / 3.0)
    elif degree in (3, 4):
        points = np.vstack([_orbit(_A4), _orbit(_B4)])
        weights = np.array([_W4A] * 3 + [_W4B] * 3)
    else:
        raise InvalidParameterError(f"Triangular quadrature of degree {degree} not supported")
    points.setflags(write=False)
    weights.setflags(write=False)
    return points, weights
