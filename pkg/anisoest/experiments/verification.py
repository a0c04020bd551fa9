"""Verification suites: identities, bubble bounds, strip bounds and paths."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import InvalidParameterError
from ..estimator import (
    Region,
    bubble_bound_check,
    classify_nodes,
    extract_paths,
    jump_difference_check,
    lower_estimator,
    vertex_identity_residual,
)
from ..fem import DiscreteField, energy_error
from ..mesh import build_grid_1d, build_tensor_mesh
from ..settings import AnisoSettings, settings as default_settings
from .cases import estimate, prepare_case, run_case
from .problems import make_problem
from .strips import strip_reports, strip_sum_check

logger = logging.getLogger(__name__)

SUITES = ("identities", "bubble", "strips", "paths")
IDENTITY_TOL = 1e-12
MONOTONE_SLACK = 1.05
STRIP_SPREAD = 0.20
NON_SHARP_FACTOR = 3.0
AMPLITUDE = 4.0


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def _spread(values: Sequence[float]) -> float:
    arr = np.asarray(values, dtype=float)
    return float(arr.max() / arr.min() - 1.0) if arr.min() > 0 else float("inf")


def _fmt(values: Sequence[float]) -> str:
    return ", ".join(f"{v:.3g}" for v in values)


def _non_increasing(values: Sequence[float]) -> bool:
    return all(b <= MONOTONE_SLACK * a for a, b in zip(values, values[1:]))


def _invariance(problem, N: int, M: int, config: AnisoSettings) -> Tuple[float, float]:
    """Relative additivity defect of E^2 and E0^2, and the effectivity change under u, f -> AMPLITUDE * (u, f)."""
    state, _ = prepare_case(problem, N, M, config=config)
    left = state.mesh.nodes[state.mesh.triangles, 0].mean(axis=1) < 0.5
    parts = Region.partition({"left": left, "right": ~left}, state.topo)
    additivity = 0.0
    for variant in ("bubble", "uniform"):
        whole = lower_estimator(state.geom, state.topo, state.jumps, state.norms, variant, short=state.short)
        pieces = [
            lower_estimator(state.geom, state.topo, state.jumps, state.norms, variant, part, state.short)
            for part in parts
        ]
        for key in ("E", "E0"):
            total = getattr(whole, key)[variant] ** 2
            summed = sum(getattr(p, key)[variant] ** 2 for p in pieces)
            additivity = max(additivity, abs(summed - total) / total if total else summed)

    loud, _ = prepare_case(problem.amplified(AMPLITUDE), N, M, config=config)
    base, scaled = estimate(state), estimate(loud)
    amplitude = max(abs(scaled.effectivity(v) / base.effectivity(v) - 1.0) for v in ("bubble", "uniform"))
    return additivity, amplitude


def verify_identities(
    sizes: Sequence[int] = (20,),
    ratios: Sequence[int] = (2, 8, 32),
    fields: int = 100,
    criss_cross: int = 16,
    config: Optional[AnisoSettings] = None,
    seed: int = 0,
) -> List[CheckResult]:
    """Vertex jump identity on solved and random fields, and exact reproduction of linear solutions."""
    config = config or default_settings
    rng = np.random.default_rng(seed)
    sine = make_problem("sine", a=1.0)
    linear = make_problem("linear", alpha=1.0, beta=2.0, gamma=0.5)
    direct = config.model_copy(update={"solver": config.solver.model_copy(update={"method": "direct"})})
    worst, worst_lin_err, worst_lin_E = 0.0, 0.0, 0.0
    cases = [(N, r * N, None) for N in sizes for r in ratios]
    g = build_grid_1d("uniform", criss_cross)
    cases.append((criss_cross, criss_cross, build_tensor_mesh(g, g, "criss_cross")))
    for N, M, mesh in cases:
        state, _ = prepare_case(sine, N, M, config=config, mesh=mesh)
        fields_on_mesh = [state.u_h] + [
            DiscreteField(state.mesh, rng.standard_normal(state.mesh.n_nodes)) for _ in range(fields)
        ]
        for u in fields_on_mesh:
            for include_boundary in (False, True):
                res = vertex_identity_residual(state.mesh, state.topo, u, include_boundary)
                worst = max(worst, res.relative)
        lin, _ = prepare_case(linear, N, M, config=direct, mesh=mesh)
        worst_lin_err = max(worst_lin_err, energy_error(lin.u_h, linear))
        for variant in ("bubble", "uniform"):
            rep = lower_estimator(lin.geom, lin.topo, lin.jumps, lin.norms, variant, short=lin.short)
            worst_lin_E = max(worst_lin_E, rep.E[variant], rep.E0[variant])
    tol = config.solver.tol
    grad = float(np.hypot(1.0, 2.0))
    additivity, amplitude = _invariance(sine, sizes[0], ratios[0] * sizes[0], config)
    return [
        CheckResult(
            "identities",
            worst < IDENTITY_TOL,
            f"max vertex residual {worst:.2e} < {IDENTITY_TOL:.0e} * max|grad u_h|",
        ),
        CheckResult(
            "linear reproduction",
            worst_lin_err <= 10 * tol and worst_lin_E <= 10 * tol * grad,
            f"max energy error {worst_lin_err:.2e}, max E/E0 {worst_lin_E:.2e} (bound {10 * tol:.0e})",
        ),
        CheckResult(
            "additivity",
            additivity < IDENTITY_TOL,
            f"E^2 over a left/right element-edge partition, relative defect {additivity:.2e}",
        ),
        CheckResult(
            "amplitude",
            amplitude < IDENTITY_TOL,
            f"u and f times {AMPLITUDE:g}: effectivity change {amplitude:.2e}",
        ),
    ]


def verify_bubble(
    sizes: Sequence[int] = (20, 40, 80),
    ratio: int = 2,
    aspect_ratios: Sequence[int] = (2, 32),
    config: Optional[AnisoSettings] = None,
) -> List[CheckResult]:
    """Bubble-bound constants stay bounded under refinement; on short edges the bubble bound loses a factor ~M/N."""
    config = config or default_settings
    problem = make_problem("sine", a=1.0)
    C_f, C_J = [], []
    anomalies = 0

    def constants(N: int, M: int):
        state, _ = prepare_case(problem, N, M, config=config)
        return bubble_bound_check(
            state.geom,
            state.topo,
            state.u_h,
            state.fI,
            state.jumps,
            state.norms,
            state.local_error_sq,
            short=state.short,
        )

    for N in sizes:
        c = constants(N, ratio * N)
        C_f.append(c.C_f)
        C_J.append(c.C_J["bubble"])
        anomalies += c.anomalies
    stretched = [constants(sizes[0], r * sizes[0]).C_J_short for r in aspect_ratios]
    bubble = [c["bubble"] for c in stretched]
    uniform = [c["uniform"] for c in stretched]
    decay = bubble[0] / bubble[-1] if bubble[-1] > 0 else float("inf")
    return [
        CheckResult("bubble C_f", _non_increasing(C_f), f"C_f over N={list(sizes)}: {_fmt(C_f)}"),
        CheckResult(
            "bubble C_J",
            _non_increasing(C_J) and anomalies == 0,
            f"C_J over N={list(sizes)}: {_fmt(C_J)}; anomalies {anomalies}",
        ),
        CheckResult(
            "bubble C_J decay on short edges",
            decay >= NON_SHARP_FACTOR,
            f"over M/N={list(aspect_ratios)}: {_fmt(bubble)} (decay {decay:.2f}); "
            f"with rho_S = 1: {_fmt(uniform)}",
        ),
    ]


def verify_strips(
    sizes: Sequence[int] = (20, 40, 80), ratio: int = 2, config: Optional[AnisoSettings] = None
) -> List[CheckResult]:
    """max_i E0(Omega_i)/Y(Omega_i) stays put under refinement; boundary strips carry no short edges."""
    problem = make_problem("sine", a=1.0)
    maxima: Dict[str, List[float]] = {"bubble": [], "uniform": []}
    boundary_E0 = 0.0
    sum_ok = True
    for N in sizes:
        case = run_case(problem, N, ratio * N, config=config)
        strips = strip_reports(case)
        for variant in maxima:
            interior = [s.ratio_E0_Y(variant) for s in strips[1:-1]]
            maxima[variant].append(float(np.nanmax(interior)))
            ratio_sum = strip_sum_check(case, strips, variant)["ratio"]
            sum_ok &= 1.0 - 1e-12 <= ratio_sum <= 2.0 + 1e-12
            boundary_E0 = max(boundary_E0, strips[0].report.E0[variant], strips[-1].report.E0[variant])
    results = [
        CheckResult(
            f"strips {variant}",
            _spread(values) < STRIP_SPREAD,
            f"max_i E0/Y over N={list(sizes)}: {', '.join(f'{v:.3g}' for v in values)} (spread {_spread(values):.1%})",
        )
        for variant, values in maxima.items()
    ]
    results.append(CheckResult("boundary strips", boundary_E0 == 0.0, f"E0 on Omega_0 and Omega_n: {boundary_E0:.2e}"))
    results.append(CheckResult("strip sum", sum_ok, "E^2 <= sum_i E_i^2 <= 2 E^2"))
    return results


def verify_paths(
    sizes: Sequence[int] = (20, 40, 80),
    ratios: Sequence[int] = (2, 8, 32),
    config: Optional[AnisoSettings] = None,
) -> List[CheckResult]:
    """One path per interior vertical grid line, and bounded jump-difference ratios along them."""
    config = config or default_settings
    est = config.estimator
    problem = make_problem("sine", a=1.0)
    structure_ok = True
    worst_ratio, worst_boundary, worst_zero = 0.0, 0.0, 0.0
    details = []
    for r in ratios:
        for N in sizes:
            state, _ = prepare_case(problem, N, r * N, config=config)
            classes = classify_nodes(state.mesh, state.topo, state.geom, est.c0, est.c_uni, est.min_angle_deg)
            paths = extract_paths(state.mesh, state.topo, state.geom, classes, state.short, est.kappa_h)
            M = r * N
            ok = len(paths) == N - 1 and all(
                p.interior_nodes.size == M - 1 and all(p.boundary_ends) and not p.touches_corner for p in paths
            )
            structure_ok &= ok
            scale = float(np.abs(state.jumps.jump).max())
            for path in paths:
                rep = jump_difference_check(state.mesh, state.topo, state.geom, state.u_h, state.jumps, path)
                worst_ratio = max(worst_ratio, rep.max_ratio)
                worst_boundary = max(worst_boundary, rep.max_boundary_ratio)
                worst_zero = max(worst_zero, rep.max_zero_denominator_numerator / scale if scale else 0.0)
            worst_orientation = max((p.orientation_ratio for p in paths), default=math.nan)
            details.append(f"N={N} M={M}: {len(paths)} paths, orientation ratio <= {worst_orientation:.3g}")
    return [
        CheckResult("path structure", structure_ok, "; ".join(details)),
        CheckResult(
            "jump difference",
            np.isfinite(worst_ratio) and worst_zero <= IDENTITY_TOL,
            f"max ratio {worst_ratio:.3g} (boundary nodes {worst_boundary:.3g}), "
            f"zero-denominator numerators <= {worst_zero:.1e} * max|J|",
        ),
    ]


_SUITES: Dict[str, Callable[..., List[CheckResult]]] = {
    "identities": verify_identities,
    "bubble": verify_bubble,
    "strips": verify_strips,
    "paths": verify_paths,
}


def run_suite(name: str, config: Optional[AnisoSettings] = None, sizes: Optional[Sequence[int]] = None) -> List[CheckResult]:
    if name not in _SUITES:
        raise InvalidParameterError(f"unknown suite {name!r}, expected one of {SUITES}")
    kwargs: Dict[str, object] = {"config": config}
    if sizes:
        kwargs["sizes"] = tuple(sizes)
    results = _SUITES[name](**kwargs)
    for result in results:
        logger.info(result.line())
    return results
