"""Command line entry point: generate spaces, run checks, run experiments."""

from __future__ import annotations

import contextlib
import functools
import itertools
import logging
import math
from collections.abc import Iterator
from pathlib import Path
from typing import get_args

import numpy as np
import typer
from pydantic import BaseModel, ConfigDict, Field

from ..config import reload_config
from ..cone import (
    BaseKind,
    build_cone_space,
    load_base,
    make_base,
    transfer_quantities,
    transfer_slope_fit,
)
from ..cone.transfer import DEFAULT_BASE_EPS, base_curvature_minus1_check
from ..curvcheck import (
    DEFAULT_EPS,
    DEFAULT_EPS_SLACK,
    DEFAULT_MUS,
    ScanReport,
    eps_mu_condition_scan,
    scan_four_point,
    triangle_condition_check,
)
from ..directions import (
    DEFAULT_ANGLE_TOL,
    DEFAULT_GRID,
    BlowupItem,
    DirectionSample,
    ambient_origin,
    angle_estimate,
    blowup_table,
    chronology_threshold,
    direction_angle,
    direction_midpoint,
    midpoint_cauchy_sequence,
    theta_monotonicity,
    threshold_flip_point,
)
from ..errors import CausalityError, GenerationError, LorcompError, RangeError
from ..lorspace import (
    AmbientSpec,
    Region,
    chain_space,
    check_region,
    from_intrinsic,
    load_space,
    save_space,
    space_summary,
    sprinkle,
    validate_axioms,
)
from ..lorspace.io import parse_model
from ..model2d import CurvatureParam
from ..runtime import (
    attach_log_file,
    configure_logging,
    format_traceback,
    get_logger,
    install_rich_tracebacks,
    load_env,
    print_error,
)
from .config import RunConfig, parse_floats, parse_powers, parse_range, parse_rows
from .reports import emit, render_axiom_report, render_csv, render_scan_report

GEN_KINDS = ("minkowski", "desitter", "antidesitter", "chain", "cone")

DEFAULT_BOXES = {
    "minkowski-2": "0,1,-1,1",
    "minkowski-3": "0,1,-1,1,-1,1",
    "desitter-2": "-1,1,-1,1",
    "antidesitter-2": "0,1.5,-0.75,0.75",
}


class BlowupItemSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    r: float = Field(gt=0.0)
    rapidity: float
    bearing: float = 0.0


class ItemsFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    point: list[float] | None = None
    items: list[BlowupItemSpec] = Field(min_length=2)


cli_app = typer.Typer(
    help="lorcomp - timelike curvature bounds on finite and analytic Lorentzian spaces",
    no_args_is_help=True,
)
check_app = typer.Typer(help="Run a curvature check and write a report.", no_args_is_help=True)
experiment_app = typer.Typer(help="Run an experiment and write a CSV table.", no_args_is_help=True)
cli_app.add_typer(check_app, name="check")
cli_app.add_typer(experiment_app, name="experiment")


@cli_app.callback()
def main(
    ctx: typer.Context,
    env_file: Path | None = typer.Option(None, "--env-file", help="Read LORCOMP_* overrides from this file"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Show tracebacks for errors"),
    log_file: Path | None = typer.Option(
        None, "--log-file", help="Also write debug logs and error tracebacks to this file"
    ),
) -> None:
    if load_env(env_file):
        reload_config()
    configure_logging()
    install_rich_tracebacks()
    if log_file is not None:
        handler = attach_log_file(log_file)
        ctx.call_on_close(functools.partial(_detach, handler))
    ctx.obj = {"verbose": verbose}


def _detach(handler: logging.Handler) -> None:
    logging.getLogger().removeHandler(handler)
    handler.close()


def _verbose(ctx: typer.Context) -> bool:
    root = ctx.find_root()
    return bool(root.obj and root.obj.get("verbose"))


@contextlib.contextmanager
def _usage_errors(ctx: typer.Context) -> Iterator[None]:
    """Bad arguments and unreadable inputs exit with code 2."""
    try:
        yield
    except (LorcompError, ValueError) as exc:
        print_error(exc, verbose=_verbose(ctx))
        get_logger().error("%s", format_traceback(exc), extra={"lorcomp_file_only": True})
        raise typer.Exit(2) from exc


def _summary(text: str, *, to_stdout: bool) -> None:
    typer.echo(text, err=not to_stdout)


# gen ----------------------------------------------------------------------------------


@cli_app.command()
def gen(
    ctx: typer.Context,
    kind: str = typer.Argument(..., help=f"One of: {', '.join(GEN_KINDS)}"),
    out: Path = typer.Option(..., "--out", help="Space file to write"),
    dim: int = typer.Option(2, "--dim", min=2, max=3, help="Dimension of Minkowski space"),
    n: int = typer.Option(30, "--n", min=0, help="Number of sprinkled points"),
    box: str | None = typer.Option(None, "--box", help="Region t0,t1,x0,x1[,y0,y1]"),
    seed: int = typer.Option(0, "--seed"),
    scale: float = typer.Option(1.0, "--scale", help="Curvature radius s"),
    midpoints: int = typer.Option(0, "--midpoints", min=0, help="Exact midpoints to insert"),
    base: str = typer.Option("h2-disc", "--base", help=f"Cone base: {', '.join(get_args(BaseKind))}"),
    base_n: int = typer.Option(20, "--base-n", min=1),
    radii: str = typer.Option("0.5:2.0:0.25", "--radii", help="start:stop:step or a comma list"),
    apex: bool = typer.Option(False, "--apex", help="Include the cone apex"),
) -> None:
    """Generate a finite space and write it in the space file format."""
    with _usage_errors(ctx):
        if kind not in GEN_KINDS:
            raise ValueError(f"unknown space kind {kind!r}; use one of {', '.join(GEN_KINDS)}")
        if dim == 3 and kind != "minkowski":
            raise ValueError("--dim 3 is only available for minkowski")
        ambient = None
        if kind in ("minkowski", "desitter", "antidesitter"):
            ambient = "minkowski-3" if dim == 3 else kind
        cfg = RunConfig(command="gen", out=out, ambient=ambient, scale=scale, seed=seed)
        if kind == "cone" and base not in get_args(BaseKind):
            raise ValueError(f"unknown base {base!r}; use one of {', '.join(get_args(BaseKind))}")
        region = None
        if ambient is not None:
            spec = cfg.ambient_spec()
            region = Region.parse(box or DEFAULT_BOXES[spec.kind])
            check_region(spec, region)
        radius_values = parse_range(radii) if kind == "cone" else ()

    try:
        if kind == "chain":
            space = chain_space(n)
        elif kind == "cone":
            cone_base = make_base(base, base_n, seed)  # type: ignore[arg-type]
            space = build_cone_space(cone_base, radius_values, include_apex=apex)
        else:
            assert region is not None
            space = sprinkle(cfg.ambient_spec(), region, n, seed, midpoints=midpoints)
    except (GenerationError, RangeError) as exc:
        print_error(exc, verbose=_verbose(ctx))
        raise typer.Exit(1) from exc
    save_space(space, out)
    typer.echo(space_summary(space).line())


# check --------------------------------------------------------------------------------


def _finish_check(cfg: RunConfig, report: ScanReport) -> None:
    text = render_scan_report(report, seed=cfg.seed, record_runtime=cfg.record_runtime)
    written = emit(text, cfg.report)
    if not written:
        typer.echo(text, nl=False)
    verdict = "PASS" if report.passed else "FAIL"
    worst = "none" if report.worst_margin is None else f"{report.worst_margin:.3e}"
    _summary(
        f"{report.check} K={report.K:g} side={report.side}: tested={report.tested} "
        f"violations={report.violations} worst={worst} -> {verdict}",
        to_stdout=written,
    )
    raise typer.Exit(0 if report.passed else 1)


@check_app.command("axioms")
def check_axioms(
    ctx: typer.Context,
    space: Path = typer.Option(..., "--space"),
    tol: float | None = typer.Option(None, "--tol"),
    report: Path | None = typer.Option(None, "--report"),
    seed: int | None = typer.Option(None, "--seed"),
) -> None:
    """Check the axioms of a Lorentzian pre-length space."""
    with _usage_errors(ctx):
        cfg = RunConfig(command="axioms", space=space, tol=tol, report=report, seed=seed)
        loaded = load_space(space)
    result = validate_axioms(loaded, cfg.tol)
    written = emit(render_axiom_report(result, seed=cfg.seed), cfg.report)
    if not written:
        typer.echo(render_axiom_report(result, seed=cfg.seed), nl=False)
    if result.passed:
        _summary(f"axioms: PASS on {loaded.n} points", to_stdout=written)
        raise typer.Exit(0)
    _summary(f"axioms: FAIL ({', '.join(result.axioms())})", to_stdout=written)
    raise typer.Exit(1)


@check_app.command("four-point")
def check_four_point(
    ctx: typer.Context,
    space: Path = typer.Option(..., "--space"),
    curvature: float = typer.Option(0.0, "--K", help="Curvature bound"),
    side: str = typer.Option("upper", "--side", help="upper or lower"),
    tol: float | None = typer.Option(None, "--tol"),
    report: Path | None = typer.Option(None, "--report"),
    seed: int | None = typer.Option(None, "--seed", help="Seed recorded in the report"),
    threads: int | None = typer.Option(None, "--threads"),
    max_witnesses: int | None = typer.Option(None, "--max-witnesses"),
    record_runtime: bool = typer.Option(False, "--record-runtime"),
) -> None:
    """Four-point condition on every matching quadruple of a space."""
    with _usage_errors(ctx):
        cfg = RunConfig(
            command="four-point",
            space=space,
            K=curvature,
            side=side,
            tol=tol,
            report=report,
            seed=seed,
            threads=threads,
            max_witnesses=max_witnesses,
            record_runtime=record_runtime,
        )
        loaded = load_space(space)
    result = scan_four_point(
        loaded,
        CurvatureParam(cfg.K),
        cfg.side,  # type: ignore[arg-type]
        cfg.tol,
        threads=cfg.threads,
        max_witnesses=cfg.max_witnesses,
    )
    _finish_check(cfg, result)


@check_app.command("eps-mu")
def check_eps_mu(
    ctx: typer.Context,
    space: Path = typer.Option(..., "--space"),
    curvature: float = typer.Option(0.0, "--K"),
    side: str = typer.Option("upper", "--side"),
    eps: str = typer.Option(",".join(map(str, DEFAULT_EPS)), "--eps"),
    mu: str = typer.Option(",".join(map(str, DEFAULT_MUS)), "--mu"),
    eps_slack: float = typer.Option(DEFAULT_EPS_SLACK, "--eps-slack", min=0.0),
    tol: float | None = typer.Option(None, "--tol"),
    report: Path | None = typer.Option(None, "--report"),
    seed: int | None = typer.Option(None, "--seed"),
    threads: int | None = typer.Option(None, "--threads"),
    max_witnesses: int | None = typer.Option(None, "--max-witnesses"),
    record_runtime: bool = typer.Option(False, "--record-runtime"),
) -> None:
    """Epsilon-mu midpoint condition on every timelike triangle of a space."""
    with _usage_errors(ctx):
        cfg = RunConfig(
            command="eps-mu",
            space=space,
            K=curvature,
            side=side,
            eps=parse_floats(eps, name="eps"),
            mus=parse_floats(mu, name="mu"),
            tol=tol,
            report=report,
            seed=seed,
            threads=threads,
            max_witnesses=max_witnesses,
            record_runtime=record_runtime,
        )
        loaded = load_space(space)
    result = eps_mu_condition_scan(
        loaded,
        CurvatureParam(cfg.K),
        cfg.side,  # type: ignore[arg-type]
        cfg.eps,
        cfg.mus,
        tol=cfg.tol,
        eps_slack=eps_slack,
        threads=cfg.threads,
        max_witnesses=cfg.max_witnesses,
    )
    _finish_check(cfg, result)


@check_app.command("triangle")
def check_triangle(
    ctx: typer.Context,
    ambient: str = typer.Option(..., "--ambient"),
    vertices: str = typer.Option(..., "--vertices", help="Intrinsic coordinates 'T,x;T,x;T,x'"),
    scale: float = typer.Option(1.0, "--scale"),
    curvature: float = typer.Option(0.0, "--K"),
    side: str = typer.Option("upper", "--side"),
    samples: int = typer.Option(16, "--samples", min=1),
    tol: float | None = typer.Option(None, "--tol"),
    report: Path | None = typer.Option(None, "--report"),
    record_runtime: bool = typer.Option(False, "--record-runtime"),
) -> None:
    """Triangle comparison on an analytic triangle of an ambient."""
    with _usage_errors(ctx):
        cfg = RunConfig(
            command="triangle",
            ambient=ambient,
            scale=scale,
            K=curvature,
            side=side,
            tol=tol,
            report=report,
            record_runtime=record_runtime,
        )
        spec = cfg.ambient_spec()
        rows = parse_rows(vertices)
        if len(rows) != 3:
            raise ValueError(f"a triangle needs three vertices, got {len(rows)}")
        points = list(from_intrinsic(spec, rows))
        result = triangle_condition_check(
            spec,
            points,
            CurvatureParam(cfg.K),
            cfg.side,  # type: ignore[arg-type]
            samples,
            tol=cfg.tol,
        )
    _finish_check(cfg, result)


@check_app.command("base-minus1")
def check_base_minus1(
    ctx: typer.Context,
    base: Path | None = typer.Option(None, "--base", help="Base file; generated when omitted"),
    base_kind: str = typer.Option("h2-disc", "--base-kind"),
    base_n: int = typer.Option(40, "--base-n", min=1),
    midpoints: int = typer.Option(20, "--midpoints", min=0),
    seed: int = typer.Option(0, "--seed"),
    eps: str = typer.Option(",".join(map(str, DEFAULT_BASE_EPS)), "--eps"),
    eps_slack: float = typer.Option(DEFAULT_EPS_SLACK, "--eps-slack", min=0.0),
    tol: float | None = typer.Option(None, "--tol"),
    report: Path | None = typer.Option(None, "--report"),
    threads: int | None = typer.Option(None, "--threads"),
    max_witnesses: int | None = typer.Option(None, "--max-witnesses"),
    record_runtime: bool = typer.Option(False, "--record-runtime"),
) -> None:
    """Midpoint comparison of a cone base against the hyperbolic plane."""
    with _usage_errors(ctx):
        cfg = RunConfig(
            command="base-minus1",
            K=-1.0,
            eps=parse_floats(eps, name="eps"),
            tol=tol,
            report=report,
            seed=seed,
            threads=threads,
            max_witnesses=max_witnesses,
            record_runtime=record_runtime,
        )
        if base is not None:
            metric = load_base(base)
        elif base_kind in get_args(BaseKind):
            metric = make_base(base_kind, base_n, seed, midpoints=midpoints)  # type: ignore[arg-type]
        else:
            raise ValueError(f"unknown base {base_kind!r}")
    result = base_curvature_minus1_check(
        metric,
        cfg.eps,
        cfg.tol,
        eps_slack=eps_slack,
        threads=cfg.threads,
        max_witnesses=cfg.max_witnesses,
    )
    _finish_check(cfg, result)


# experiment ---------------------------------------------------------------------------


def _finish_experiment(cfg: RunConfig, csv_text: str, line: str, passed: bool) -> None:
    written = emit(csv_text, cfg.out)
    if not written:
        typer.echo(csv_text, nl=False)
    _summary(f"{line} -> {'PASS' if passed else 'FAIL'}", to_stdout=written)
    raise typer.Exit(0 if passed else 1)


def _direction_pair(spec: AmbientSpec, omega: float) -> tuple[DirectionSample, DirectionSample]:
    p = ambient_origin(spec)
    return DirectionSample.from_rapidity(spec, p, 0.0), DirectionSample.from_rapidity(spec, p, omega)


def _default_items(spec: AmbientSpec) -> list[BlowupItem]:
    p = ambient_origin(spec)
    return [
        BlowupItem(1.0, DirectionSample.from_rapidity(spec, p, 0.0)),
        BlowupItem(2.0, DirectionSample.from_rapidity(spec, p, 0.5)),
    ]


def _load_items(spec: AmbientSpec, path: Path) -> tuple[np.ndarray, list[BlowupItem]]:
    parsed = parse_model(ItemsFile, path)
    p = ambient_origin(spec) if parsed.point is None else np.array(parsed.point, dtype=np.float64)
    items = [
        BlowupItem(item.r, DirectionSample.from_rapidity(spec, p, item.rapidity, item.bearing))
        for item in parsed.items
    ]
    return p, items


@experiment_app.command("blowup")
def experiment_blowup(
    ctx: typer.Context,
    ambient: str = typer.Option(..., "--ambient"),
    scale: float = typer.Option(1.0, "--scale"),
    items: Path | None = typer.Option(None, "--items", help="JSON with 'point' and 'items'"),
    lambdas: str = typer.Option("2^-3..2^-12", "--lambda"),
    angles: str = typer.Option("oracle", "--angles", help="oracle or estimate"),
    tol: float = typer.Option(1e-4, "--tol"),
    out: Path | None = typer.Option(None, "--out"),
    threads: int | None = typer.Option(None, "--threads"),
) -> None:
    """Rescaled time separations against the tangent cone."""
    with _usage_errors(ctx):
        cfg = RunConfig(
            command="blowup",
            ambient=ambient,
            scale=scale,
            lambdas=parse_powers(lambdas),
            tol=tol,
            out=out,
            threads=threads,
        )
        if angles not in ("oracle", "estimate"):
            raise ValueError(f"--angles must be 'oracle' or 'estimate', got {angles!r}")
        spec = cfg.ambient_spec()
        if items is None:
            p, entries = ambient_origin(spec), _default_items(spec)
        else:
            p, entries = _load_items(spec, items)
        table = blowup_table(p, entries, cfg.lambdas, angles=angles, threads=cfg.threads)  # type: ignore[arg-type]

    n = len(entries)
    rows = [
        (lam, i, j, float(table.values[k, i, j]), float(table.reference[i, j]),
         float(abs(table.values[k, i, j] - table.reference[i, j])))
        for k, lam in enumerate(table.lambdas)
        for i, j in itertools.permutations(range(n), 2)
        if table.reference[i, j] > 0.0 or table.values[k, i, j] > 0.0
    ]
    line = f"blowup {spec.kind}: error {table.finest_error:.3e} at lambda={table.lambdas[-1]:g}"
    passed = table.finest_error <= tol
    if table.margins is not None:
        worst = table.margins.worst
        line += f", cone four-point margin {worst if worst is None else format(worst, '.3e')}"
        passed = passed and table.margins.passed
    _finish_experiment(cfg, render_csv(rows), line, passed)


@experiment_app.command("threshold")
def experiment_threshold(
    ctx: typer.Context,
    ambient: str = typer.Option(..., "--ambient"),
    scale: float = typer.Option(1.0, "--scale"),
    omega: float = typer.Option(1.0, "--omega", min=0.0),
    ts: str = typer.Option("1,0.1,0.01,0.001", "--t"),
    mu_scan: bool = typer.Option(False, "--mu-scan", help="Locate the flip point in mu"),
    mu: float | None = typer.Option(None, "--mu"),
    tol: float = typer.Option(1e-3, "--tol"),
    out: Path | None = typer.Option(None, "--out"),
) -> None:
    """Chronology of exp(mu t, d1) and exp(t, d2) against the flat threshold exp(-omega)."""
    with _usage_errors(ctx):
        cfg = RunConfig(
            command="threshold",
            ambient=ambient,
            scale=scale,
            mus=() if mu is None else (mu,),
            tol=tol,
            out=out,
        )
        if not mu_scan and mu is None:
            raise ValueError("give --mu or --mu-scan")
        d1, d2 = _direction_pair(cfg.ambient_spec(), omega)
        times = sorted(parse_floats(ts, name="t"), reverse=True)
        flat = math.exp(-direction_angle(d1, d2))
        rows: list[tuple[float, int, int, float, float, float]] = []
        for t in times:
            if mu_scan:
                value, reference = threshold_flip_point(d1, d2, t), flat
            else:
                assert mu is not None
                value = float(chronology_threshold(d1, d2, mu, t))
                reference = float(mu < flat)
            rows.append((t, 0, 1, value, reference, abs(value - reference)))

    finest = rows[-1]
    if mu_scan:
        line = f"threshold {d1.ambient.kind}: flip at mu={finest[3]:.12f} (exp(-omega)={flat:.12f})"
    else:
        line = f"threshold {d1.ambient.kind}: chronological={bool(finest[3])} at mu={mu:g}"
    _finish_experiment(cfg, render_csv(rows), line, finest[5] <= tol)


@experiment_app.command("cone-transfer")
def experiment_cone_transfer(
    ctx: typer.Context,
    base: str = typer.Option("h2-disc", "--base"),
    base_n: int = typer.Option(20, "--base-n", min=2),
    seed: int = typer.Option(0, "--seed"),
    r2: float = typer.Option(1.0, "--r2"),
    r3: float = typer.Option(3.0, "--r3"),
    pairs: int = typer.Option(5, "--pairs", min=1),
    eps: str = typer.Option(",".join(map(str, DEFAULT_BASE_EPS)), "--eps"),
    tol: float = typer.Option(0.05, "--tol", help="Relative slope tolerance"),
    out: Path | None = typer.Option(None, "--out"),
) -> None:
    """First-order law of the cone midpoint defects under base perturbations."""
    with _usage_errors(ctx):
        cfg = RunConfig(
            command="cone-transfer", eps=parse_floats(eps, name="eps"), tol=tol, seed=seed, out=out
        )
        if base not in get_args(BaseKind):
            raise ValueError(f"unknown base {base!r}")
        metric = make_base(base, base_n, seed)  # type: ignore[arg-type]
        chosen: list[tuple[int, int, float]] = []
        for j, k in itertools.combinations(range(metric.n), 2):
            d23 = float(metric.dY[j, k])
            if d23 <= 0.0:
                continue
            try:
                transfer_quantities(r2, r3, d23)
            except CausalityError:
                continue
            chosen.append((j, k, d23))
            if len(chosen) == pairs:
                break
        if not chosen:
            raise RangeError(
                f"no base pair is timelike for radii {r2:g}, {r3:g}",
                hints=["Use radii further apart or a smaller base."],
            )
        fits = [(j, k, transfer_slope_fit(r2, r3, d23, cfg.eps)) for j, k, d23 in chosen]

    rows = [
        (e, j, k, g, fit.coefficient * e, abs(g - fit.coefficient * e))
        for j, k, fit in fits
        for e, g in zip(fit.eps, fit.defects, strict=True)
    ]
    worst = max(fit.relative_error for _, _, fit in fits)
    line = f"cone-transfer {base}: worst relative slope error {worst:.3%} over {len(fits)} pairs"
    _finish_experiment(cfg, render_csv(rows), line, worst <= tol)


@experiment_app.command("direction-midpoint")
def experiment_direction_midpoint(
    ctx: typer.Context,
    ambient: str = typer.Option("minkowski-3", "--ambient"),
    scale: float = typer.Option(1.0, "--scale"),
    omega: float = typer.Option(1.0, "--omega", min=0.0),
    eps: float = typer.Option(1e-3, "--eps"),
    cauchy: bool = typer.Option(False, "--cauchy", help="Run eps = 2^-k for k = 1..kmax"),
    kmax: int = typer.Option(10, "--kmax", min=2),
    out: Path | None = typer.Option(None, "--out"),
) -> None:
    """Constructive midpoints between two directions."""
    with _usage_errors(ctx):
        cfg = RunConfig(command="direction-midpoint", ambient=ambient, scale=scale, eps=(eps,), out=out)
        d1, d2 = _direction_pair(cfg.ambient_spec(), omega)
        half = direction_angle(d1, d2) / 2.0
        if cauchy:
            decay = midpoint_cauchy_sequence(d1, d2, range(1, kmax + 1))
            runs = [(2.0 ** (-k), m) for k, m in zip(decay.ks, decay.midpoints, strict=True)]
        else:
            decay = None
            runs = [(eps, direction_midpoint(d1, d2, eps))]

    rows = []
    for e, m in runs:
        rows.append((e, 0, 1, m.first, half, abs(m.first - half)))
        rows.append((e, 1, 2, m.second, half, abs(m.second - half)))
    passed = all(row[5] <= row[0] for row in rows)
    line = f"direction-midpoint {d1.ambient.kind}: half-angle error {rows[-1][5]:.3e} at eps={runs[-1][0]:g}"
    if decay is not None:
        rate = "n/a" if decay.rate is None else f"{decay.rate:.3f}"
        line += f", Cauchy constant {decay.constant:.3f}, rate {rate}"
    _finish_experiment(cfg, render_csv(rows), line, passed)


@experiment_app.command("monotonicity")
def experiment_monotonicity(
    ctx: typer.Context,
    ambient: str = typer.Option(..., "--ambient"),
    scale: float = typer.Option(1.0, "--scale"),
    omega: float = typer.Option(0.7, "--omega", min=0.0),
    side: str = typer.Option("upper", "--side"),
    tol: float | None = typer.Option(None, "--tol"),
    out: Path | None = typer.Option(None, "--out"),
    threads: int | None = typer.Option(None, "--threads"),
) -> None:
    """Monotonicity of the comparison angle along the two geodesics."""
    with _usage_errors(ctx):
        cfg = RunConfig(
            command="monotonicity", ambient=ambient, scale=scale, side=side, tol=tol, out=out, threads=threads
        )
        d1, d2 = _direction_pair(cfg.ambient_spec(), omega)
        verdict = theta_monotonicity(
            d1, d2, DEFAULT_GRID, cfg.side, tol=cfg.tol, threads=cfg.threads  # type: ignore[arg-type]
        )
        grid = angle_estimate(d1, d2, DEFAULT_GRID, threads=cfg.threads)

    rows = [
        (t, s, float(grid.theta[i, j]))
        for (i, t), (j, s) in itertools.product(enumerate(grid.t_grid), enumerate(grid.s_grid))
        if not math.isnan(grid.theta[i, j])
    ]
    line = (
        f"monotonicity {verdict.side} on {d1.ambient.kind}: defect {verdict.defect:.3e} "
        f"over {verdict.comparisons} steps"
    )
    _finish_experiment(cfg, render_csv(rows, ("t", "s", "theta")), line, verdict.passed)


@experiment_app.command("angle")
def experiment_angle(
    ctx: typer.Context,
    ambient: str = typer.Option(..., "--ambient"),
    scale: float = typer.Option(1.0, "--scale"),
    omega: float = typer.Option(0.7, "--omega", min=0.0),
    tol: float = typer.Option(DEFAULT_ANGLE_TOL, "--tol"),
    out: Path | None = typer.Option(None, "--out"),
    threads: int | None = typer.Option(None, "--threads"),
) -> None:
    """Angle estimates with K = -1, 0, 1 comparison angles against the smooth angle."""
    with _usage_errors(ctx):
        cfg = RunConfig(command="angle", ambient=ambient, scale=scale, tol=tol, out=out, threads=threads)
        d1, d2 = _direction_pair(cfg.ambient_spec(), omega)
        oracle = direction_angle(d1, d2)
        rows = []
        for K in (-1.0, 0.0, 1.0):
            estimate = angle_estimate(d1, d2, DEFAULT_GRID, K=K, tol=tol, threads=cfg.threads).estimate
            rows.append((K, 0, 1, estimate, oracle, abs(estimate - oracle)))

    worst = max(row[5] for row in rows)
    line = f"angle {d1.ambient.kind}: worst deviation {worst:.3e} from {oracle:.9f}"
    _finish_experiment(cfg, render_csv(rows), line, worst <= tol)


def cli() -> None:
    """CLI entry point."""
    cli_app()


if __name__ == "__main__":
    cli()
