"""anisoest command line: solve one case, reproduce tables, run verification suites, dump meshes."""

from __future__ import annotations

import logging
import sys
from enum import Enum
from pathlib import Path
from typing import List, Optional

import click
import jsonschema
import typer
from pydantic import BaseModel, Field, ValidationError, ValidationInfo, field_validator

from .errors import NUMERICAL_ERRORS, AnisoError
from .estimator import classify_nodes, edge_dump
from .experiments import compare_reference, make_problem, reproduce_table, run_case, run_suite, strip_reports
from .experiments.cases import problem_mesh
from .mesh import build_topology, compute_geometry
from .mesh.io import write_mesh
from .render import render, sci3
from .settings import AnisoSettings, settings

logger = logging.getLogger(__name__)

app = typer.Typer(help="Anisotropic a posteriori error estimator benchmarks", no_args_is_help=True)


class ProblemId(str, Enum):
    sine = "sine"
    layer = "layer"
    oblique = "oblique"
    linear = "linear"


class Variant(str, Enum):
    bubble = "bubble"
    uniform = "uniform"
    bubble_squared = "bubble_squared"
    all = "all"


class Scale(str, Enum):
    desk = "desk"
    full = "full"


class Suite(str, Enum):
    identities = "identities"
    bubble = "bubble"
    strips = "strips"
    paths = "paths"


class Fmt(str, Enum):
    csv = "csv"
    md = "md"
    csv_full = "csv_full"


class SolverMethod(str, Enum):
    cg = "cg"
    direct = "direct"
    auto = "auto"


class Diagonal(str, Enum):
    sw_ne = "sw_ne"
    nw_se = "nw_se"
    criss_cross = "criss_cross"


class RunConfig(BaseModel):
    """Validated command-line values; they override the environment settings."""

    command: str
    problem: Optional[str] = None
    a: Optional[float] = None
    eps: Optional[float] = None
    nx: int = Field(default=20)
    ny: int = Field(default=40)
    variants: List[str] = Field(default_factory=lambda: ["bubble", "uniform"])
    c0: Optional[float] = None
    c_short: Optional[float] = None
    tol: Optional[float] = None
    solver: Optional[str] = None
    diagonal: Optional[str] = None
    fmt: str = "md"
    output: Optional[str] = None
    scale: str = "desk"
    threads: Optional[int] = None

    @field_validator("nx", "ny")
    @classmethod
    def validate_positive_count(cls, v: int, info: ValidationInfo):
        if v < 1:
            raise ValueError(f"{info.field_name} must be at least 1")
        return v

    @field_validator("a", "eps", "tol", "threads")
    @classmethod
    def validate_positive(cls, v, info: ValidationInfo):
        if v is not None and not v > 0:
            raise ValueError(f"{info.field_name} must be positive")
        return v

    @field_validator("c0", "c_short")
    @classmethod
    def validate_fraction(cls, v: Optional[float], info: ValidationInfo):
        if v is not None and not 0 < v < 1:
            raise ValueError(f"{info.field_name} must lie in (0, 1)")
        return v

    def settings(self) -> AnisoSettings:
        solver = {k: v for k, v in (("tol", self.tol), ("method", self.solver)) if v is not None}
        est = {
            k: v for k, v in (("c0", self.c0), ("c_short", self.c_short), ("diagonal", self.diagonal)) if v is not None
        }
        update = {
            "solver": settings.solver.model_copy(update=solver),
            "estimator": settings.estimator.model_copy(update=est),
        }
        if self.threads is not None:
            update["threads"] = self.threads
        return settings.model_copy(update=update)


def _configure_logging(debug: bool) -> None:
    level = logging.DEBUG if debug or settings.debug else logging.INFO
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    logging.getLogger().setLevel(level)


@app.callback()
def main_callback(debug: bool = typer.Option(False, "--debug", help="Log at DEBUG level")):
    _configure_logging(debug)


@app.command()
def solve(
    problem: ProblemId = typer.Option(ProblemId.sine, "--problem", "-p"),
    a: Optional[float] = typer.Option(None, "--a", help="Frequency of the sine problem"),
    eps: Optional[float] = typer.Option(None, "--eps", help="Layer width of the layer/oblique problems"),
    nx: int = typer.Option(20, "--nx", "-N"),
    ny: int = typer.Option(40, "--ny", "-M"),
    estimator: Variant = typer.Option(Variant.all, "--estimator", "-e"),
    c0: Optional[float] = typer.Option(None, "--c0"),
    c_short: Optional[float] = typer.Option(None, "--c-short"),
    tol: Optional[float] = typer.Option(None, "--tol"),
    solver: Optional[SolverMethod] = typer.Option(None, "--solver"),
    diagonal: Optional[Diagonal] = typer.Option(None, "--diagonal"),
    fmt: Fmt = typer.Option(Fmt.md, "--format", "-f"),
    strips: bool = typer.Option(False, "--strips", help="Add one row per strip Omega_i"),
    dump_edges: Optional[Path] = typer.Option(None, "--dump-edges", help="Write per-edge jumps as CSV"),
    dump_field: Optional[Path] = typer.Option(None, "--dump-field", help="Write u_h as '<node> <value>' lines"),
):
    """Solve one case and print its estimator report."""
    variants = ["bubble", "uniform"] if estimator == Variant.all else [estimator.value]
    cfg = RunConfig(
        command="solve",
        problem=problem.value,
        a=a,
        eps=eps,
        nx=nx,
        ny=ny,
        variants=variants,
        c0=c0,
        c_short=c_short,
        tol=tol,
        solver=solver.value if solver else None,
        diagonal=diagonal.value if diagonal else None,
        fmt=fmt.value,
    )
    prob = make_problem(cfg.problem, a=cfg.a, eps=cfg.eps)
    case = run_case(prob, cfg.nx, cfg.ny, variants=cfg.variants, config=cfg.settings())
    summary = [f"error {sci3(case.error)}"]
    for v in cfg.variants:
        summary.append(f"E_{v} {sci3(case.report.E[v])} eff_{v} {case.effectivity(v):.2f}")
    typer.echo("; ".join(summary))
    typer.echo(f"solver {case.stats.method}: {case.stats.iterations} iterations")
    rows = [case]
    typer.echo(render(rows, cfg.fmt), nl=False)
    if strips:
        typer.echo(render([s.report for s in strip_reports(case, cfg.variants)], cfg.fmt), nl=False)
    state = case.state
    if dump_edges is not None:
        dump_edges.write_text(edge_dump(state.mesh, state.topo, state.geom, state.jumps, state.short))
        typer.echo(f"edges written to {dump_edges}")
    if dump_field is not None:
        dump_field.write_text(state.u_h.to_text())
        typer.echo(f"field written to {dump_field}")


@app.command()
def table(
    table_id: int = typer.Option(..., "--id", help="Table number 1, 2 or 3"),
    scale: Scale = typer.Option(Scale.desk, "--scale"),
    output: Optional[Path] = typer.Option(None, "--out", "-o", help="Directory for table<id>_<scale>.csv/.md"),
    threads: Optional[int] = typer.Option(None, "--threads", help="Worker threads (default ANISOEST_THREADS)"),
    check: bool = typer.Option(False, "--check", help="Exit 1 if a value misses its printed reference"),
):
    """Reproduce one of the benchmark tables."""
    cfg = RunConfig(command="table", scale=scale.value, output=str(output) if output else None, threads=threads)
    config = cfg.settings()
    report = reproduce_table(table_id, cfg.scale, config=config)
    out_dir = Path(cfg.output or config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = out_dir / f"table{table_id}_{cfg.scale}"
    stem.with_suffix(".csv").write_text(render(report, "csv_full"))
    markdown = render(report, "md")
    stem.with_suffix(".md").write_text(markdown)
    typer.echo(render(report, "csv"), nl=False)
    for skipped in report.skipped:
        typer.echo(f"skipped at {cfg.scale} scale: {skipped}", err=True)
    if check:
        deviations = compare_reference(report)
        for deviation in deviations:
            typer.echo(f"DEVIATION {deviation.describe()}", err=True)
        if deviations:
            raise typer.Exit(code=1)


@app.command()
def verify(
    suite: Suite = typer.Option(..., "--suite", "-s"),
    max_n: Optional[int] = typer.Option(None, "--max-n", help="Largest N of the refinement sequence"),
):
    """Run a verification suite and print PASS/FAIL lines."""
    sizes = None
    if max_n is not None:
        sizes = [n for n in (20, 40, 80) if n <= max_n] or [max_n]
    results = run_suite(suite.value, settings, sizes=sizes)
    for result in results:
        typer.echo(result.line())
    if not all(result.passed for result in results):
        raise typer.Exit(code=1)


@app.command("mesh")
def mesh_cmd(
    nx: int = typer.Option(..., "--nx"),
    ny: int = typer.Option(..., "--ny"),
    eps: Optional[float] = typer.Option(None, "--eps", help="Height of the domain (0,1) x (0,eps)"),
    diagonal: Diagonal = typer.Option(Diagonal.sw_ne, "--diagonal"),
    dump: Optional[Path] = typer.Option(None, "--dump", help="Write the mesh in text form"),
):
    """Build a tensor mesh and report its counts."""
    cfg = RunConfig(command="mesh", nx=nx, ny=ny, eps=eps, diagonal=diagonal.value)
    prob = make_problem("layer", eps=cfg.eps) if cfg.eps is not None else make_problem("sine")
    mesh = problem_mesh(prob, cfg.nx, cfg.ny, cfg.diagonal)
    topo = build_topology(mesh)
    geom = compute_geometry(mesh, topo)
    classes = classify_nodes(mesh, topo, geom, settings.estimator.c0, settings.estimator.c_uni)
    typer.echo(
        f"nodes {mesh.n_nodes} triangles {mesh.n_triangles} edges {topo.n_edges} "
        f"interior edges {int(topo.interior_edges.sum())} anisotropic nodes {classes.n_anisotropic}"
    )
    if dump is not None:
        write_mesh(mesh, dump)
        typer.echo(f"mesh written to {dump}")


def dispatch(argv: Optional[List[str]] = None) -> int:
    """Run the CLI on ``argv``; 0 on success, 1 on validation failure, 2 on numerical failure."""
    command = typer.main.get_command(app)
    try:
        code = command.main(args=list(argv or []), prog_name="anisoest", standalone_mode=False)
    except click.exceptions.ClickException as exc:
        exc.show()
        return 1
    except click.exceptions.Abort:
        return 1
    except NUMERICAL_ERRORS as exc:
        typer.echo(f"numerical failure: {exc}", err=True)
        return 2
    except (ValidationError, jsonschema.ValidationError, AnisoError, ValueError) as exc:
        typer.echo(f"invalid input: {exc}", err=True)
        return 1
    return code if isinstance(code, int) else 0


def main() -> None:
    raise SystemExit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
