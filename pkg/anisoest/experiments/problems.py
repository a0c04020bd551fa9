"""Exact solutions with their gradients and sources f = -Lap u."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from ..errors import InvalidParameterError, UnknownProblemError

Array = np.ndarray
PROBLEM_IDS = ("sine", "layer", "oblique", "linear")


@dataclass(frozen=True)
class TestProblem:
    """u, grad u and f on the rectangle (0, Lx) x (0, Ly); Dirichlet data is the trace of u."""

    __test__ = False

    id: str
    params: Dict[str, float]
    lengths: Tuple[float, float]
    u: Callable[[Array, Array], Array] = field(repr=False)
    grad: Callable[[Array, Array], Tuple[Array, Array]] = field(repr=False)
    f: Callable[[Array, Array], Array] = field(repr=False)
    scale: float = 1.0

    def grad_u(self, x: Array, y: Array) -> Tuple[Array, Array]:
        return self.grad(x, y)

    @property
    def label(self) -> str:
        inner = ", ".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{self.id}({inner})"

    def amplified(self, factor: float) -> "TestProblem":
        """The same problem with u, grad u and f multiplied by ``factor``."""
        u, grad, f = self.u, self.grad, self.f

        def grad_c(x: Array, y: Array) -> Tuple[Array, Array]:
            gx, gy = grad(x, y)
            return factor * gx, factor * gy

        return replace(
            self,
            params={**self.params, "amplitude": factor},
            u=lambda x, y: factor * u(x, y),
            grad=grad_c,
            f=lambda x, y: factor * f(x, y),
        )


def _sine(a: float) -> TestProblem:
    k = math.pi * a
    return TestProblem(
        id="sine",
        params={"a": a},
        lengths=(1.0, 1.0),
        u=lambda x, y: np.sin(k * x) + 0.0 * y,
        grad=lambda x, y: (k * np.cos(k * x) + 0.0 * y, 0.0 * x + 0.0 * y),
        f=lambda x, y: k * k * np.sin(k * x) + 0.0 * y,
        scale=1.0 / k,
    )


def _layer(eps: float) -> TestProblem:
    mu = 2.0 * eps * eps
    coef = mu**-2 - eps**-2

    def u(x: Array, y: Array) -> Array:
        return np.sin(x / mu) * np.exp(-y / eps)

    def grad(x: Array, y: Array) -> Tuple[Array, Array]:
        decay = np.exp(-y / eps)
        return np.cos(x / mu) * decay / mu, -np.sin(x / mu) * decay / eps

    return TestProblem(
        id="layer",
        params={"eps": eps, "mu": mu},
        lengths=(1.0, eps),
        u=u,
        grad=grad,
        f=lambda x, y: coef * u(x, y),
        scale=min(mu, eps),
    )


def _oblique(eps: float) -> TestProblem:
    def grad(x: Array, y: Array) -> Tuple[Array, Array]:
        c = np.cos((2.0 * y - x) / eps)
        return -c / eps, 2.0 * c / eps

    return TestProblem(
        id="oblique",
        params={"eps": eps},
        lengths=(1.0, eps),
        u=lambda x, y: np.sin((2.0 * y - x) / eps),
        grad=grad,
        f=lambda x, y: 5.0 / eps**2 * np.sin((2.0 * y - x) / eps),
        scale=eps / math.sqrt(5.0),
    )


def _linear(alpha: float, beta: float, gamma: float) -> TestProblem:
    return TestProblem(
        id="linear",
        params={"alpha": alpha, "beta": beta, "gamma": gamma},
        lengths=(1.0, 1.0),
        u=lambda x, y: alpha * x + beta * y + gamma,
        grad=lambda x, y: (alpha + 0.0 * x, beta + 0.0 * y),
        f=lambda x, y: 0.0 * x + 0.0 * y,
    )


def make_problem(
    problem_id: str,
    a: Optional[float] = None,
    eps: Optional[float] = None,
    alpha: float = 1.0,
    beta: float = 0.0,
    gamma: float = 0.0,
) -> TestProblem:
    """sine: u = sin(pi a x); layer: u = sin(x/mu) exp(-y/eps), mu = 2 eps^2;
    oblique: u = sin((2y - x)/eps); linear: u = alpha x + beta y + gamma."""
    if problem_id == "sine":
        a = 1.0 if a is None else float(a)
        if not a > 0:
            raise InvalidParameterError(f"sine problem needs a > 0, got {a}")
        return _sine(a)
    if problem_id in ("layer", "oblique"):
        if eps is None or not 0 < eps <= 1:
            raise InvalidParameterError(f"{problem_id} problem needs 0 < eps <= 1, got {eps}")
        return _layer(float(eps)) if problem_id == "layer" else _oblique(float(eps))
    if problem_id == "linear":
        return _linear(float(alpha), float(beta), float(gamma))
    raise UnknownProblemError(f"unknown problem {problem_id!r}, expected one of {PROBLEM_IDS}")


def laplacian_residual(problem: TestProblem, x: Array, y: Array) -> Array:
    """-Lap u - f by a fourth-order difference stencil, relative to max |f| over the points."""
    h = 1e-3 * problem.scale
    stencil = ((-2, -1.0), (-1, 16.0), (0, -30.0), (1, 16.0), (2, -1.0))
    lap = np.zeros_like(x, dtype=float)
    for k, w in stencil:
        lap += w * (problem.u(x + k * h, y) + problem.u(x, y + k * h))
    lap /= 12.0 * h * h
    f = problem.f(x, y)
    ref = max(float(np.abs(f).max()), 1.0 / problem.scale**2 * float(np.abs(problem.u(x, y)).max()), 1e-300)
    return (-lap - f) / ref
