from __future__ import annotations

from typing import Any


class AnisoError(Exception):
    """Base class for every error raised by anisoest."""


class InvalidParameterError(AnisoError, ValueError):
    pass


class UnknownProblemError(InvalidParameterError):
    pass


class TopologyError(AnisoError, ValueError):
    pass


class GeometryError(AnisoError, ValueError):
    pass


class AssemblyError(AnisoError, ValueError):
    pass


class NotApplicableError(AnisoError, ValueError):
    pass


class NonConvergenceError(AnisoError, RuntimeError):
    """PCG hit its iteration cap; ``stats`` holds the last iterate's SolveStats."""

    def __init__(self, message: str, stats: Any = None):
        super().__init__(message)
        self.stats = stats


NUMERICAL_ERRORS = (NonConvergenceError, GeometryError, AssemblyError, TopologyError)
