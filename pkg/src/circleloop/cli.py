"""Batch command-line front end.

    circleloop validate  SPEC
    circleloop mul       SPEC S T
    circleloop ldiv      SPEC A B
    circleloop rdiv      SPEC B A
    circleloop table     SPEC -n N -o OUT.csv
    circleloop plot-data SPEC -o OUT.csv
    circleloop check     SPEC --suite NAME [--seed S] [--skip-validation]

Global flags: --grid N overrides the validation grid, --degrees converts
angle arguments from degrees on input (output stays in radians).

Exit codes are the machine contract: 0 pass, 1 I/O / schema / usage
error, 2 inadmissible spec, 3 suite failure.
"""

from __future__ import annotations

import dataclasses
import json
import sys
from pathlib import Path

import click
import numpy as np

from . import ops, verify
from .builder import LoopSpec, Tolerances, build_loop_spec, subfunction_bound
from .errors import SpecFileError, UnknownSuiteError
from .fourier import TWO_PI
from .specfile import load_spec_file

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INADMISSIBLE = 2
EXIT_SUITE_FAILURE = 3


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _build(path: str, options: dict) -> LoopSpec:
    try:
        doc = load_spec_file(path)
    except SpecFileError as exc:
        _fail(str(exc), EXIT_ERROR)
    grid_n = options["grid"] or doc.grid_n or 4096
    tol = doc.tolerances or Tolerances()
    overrides = {
        name: options[name]
        for name in ("tol_eq", "delta_strict", "tol_root")
        if options[name] is not None
    }
    if overrides:
        tol = dataclasses.replace(tol, **overrides)
    return build_loop_spec(doc.weight, doc.g, grid_n=grid_n, tolerances=tol)


def _require_valid(spec: LoopSpec) -> None:
    if not spec.report.verdict:
        for fail in spec.report.failures:
            where = "" if fail.where is None else f" at t={fail.where:.6f}"
            click.echo(f"FAIL {fail.condition}{where}: {fail.value:.6g}", err=True)
        _fail("spec is inadmissible", EXIT_INADMISSIBLE)


def _angle(value: float, degrees: bool) -> float:
    return float(value) * np.pi / 180.0 if degrees else float(value)


def _snap(angle):
    """Angles closer to 2*pi than the print resolution are the point 0."""
    angle = np.asarray(angle)
    out = np.where(TWO_PI - angle < 1e-11, 0.0, angle)
    return out if out.shape else float(out)


def _report_header(spec: LoopSpec) -> None:
    r = spec.report
    t = r.tolerances
    click.echo(
        f"# grid_n={r.grid_n} tol_eq={t.tol_eq:g} delta_strict={t.delta_strict:g} "
        f"tol_boundary={t.tol_boundary:g} tol_root={t.tol_root:g} tol_det={t.tol_det:g}"
    )


def _report_dict(spec: LoopSpec) -> dict:
    r = spec.report
    return {
        "verdict": r.verdict,
        "grid_n": r.grid_n,
        "tolerances": dataclasses.asdict(r.tolerances),
        "weight": {
            "identity_residual": r.weight_check.identity_residual,
            "positivity_margin": r.weight_check.positivity_margin,
            "energy_slack": r.weight_check.energy_slack,
            "verdict": r.weight_check.verdict,
        },
        "profile_min": r.f_inv_min,
        "profile_argmin": r.f_inv_argmin,
        "discriminant_max": r.discriminant_max,
        "discriminant_argmax": r.discriminant_argmax,
        "initial_slope_margin": r.initial_slope_margin,
        "g_bound_margin": r.g_bound_margin,
        "g_bound_argmin": r.g_bound_argmin,
        "integral_value": r.integral_value,
        "boundary_residuals": [r.f0_residual, r.g0_residual, r.g2pi_residual],
        "failures": [
            {"condition": f.condition, "where": f.where, "value": f.value}
            for f in r.failures
        ],
    }


@click.group()
@click.option("--grid", "grid_n", type=int, default=None, help="Validation grid size override.")
@click.option("--degrees", is_flag=True, help="Interpret angle arguments as degrees.")
@click.option("--tol-eq", type=float, default=None, help="Equality-residual tolerance override.")
@click.option("--delta-strict", type=float, default=None,
              help="Required margin for strict inequalities.")
@click.option("--tol-root", type=float, default=None, help="Division bisection tolerance.")
@click.pass_context
def cli(ctx: click.Context, grid_n: int | None, degrees: bool, tol_eq: float | None,
        delta_strict: float | None, tol_root: float | None) -> None:
    """Construct and verify differentiable loops on the circle."""
    ctx.obj = {
        "grid": grid_n,
        "degrees": degrees,
        "tol_eq": tol_eq,
        "delta_strict": delta_strict,
        "tol_root": tol_root,
    }


@cli.command()
@click.argument("spec_path", metavar="SPEC")
@click.pass_context
def validate(ctx: click.Context, spec_path: str) -> None:
    """Run every admissibility check and print the validation report."""
    spec = _build(spec_path, ctx.obj)
    r = spec.report
    _report_header(spec)
    click.echo(f"weight identity residual : {r.weight_check.identity_residual:.6g}")
    click.echo(f"weight positivity margin : {r.weight_check.positivity_margin:.6g}")
    click.echo(f"weight energy slack      : {r.weight_check.energy_slack:.6g}")
    click.echo(f"profile minimum          : {r.f_inv_min:.6g} at t={r.f_inv_argmin:.6f}")
    click.echo(f"discriminant maximum     : {r.discriminant_max:.6g} at t={r.discriminant_argmax:.6f}")
    click.echo(f"initial slope margin     : {r.initial_slope_margin:.6g}")
    click.echo(f"g lower-bound margin     : {r.g_bound_margin:.6g} at t={r.g_bound_argmin:.6f}")
    click.echo(f"integral inequality      : {r.integral_value:.6g}")
    click.echo(
        "boundary residuals       : "
        f"|f(0)-1|={r.f0_residual:.3g} |g(0)|={r.g0_residual:.3g} |g(2pi)|={r.g2pi_residual:.3g}"
    )
    for fail in r.failures:
        where = "" if fail.where is None else f" at t={fail.where:.6f}"
        click.echo(f"FAIL {fail.condition}{where}: {fail.value:.6g}")
    click.echo(f"verdict                  : {'ADMISSIBLE' if r.verdict else 'INADMISSIBLE'}")
    click.echo(json.dumps(_report_dict(spec)))
    sys.exit(EXIT_OK if r.verdict else EXIT_INADMISSIBLE)


@cli.command()
@click.argument("spec_path", metavar="SPEC")
@click.argument("s", type=float)
@click.argument("t", type=float)
@click.pass_context
def mul(ctx: click.Context, spec_path: str, s: float, t: float) -> None:
    """Print the loop product S * T in radians."""
    spec = _build(spec_path, ctx.obj)
    _require_valid(spec)
    d = ctx.obj["degrees"]
    click.echo(f"{_snap(ops.mul(spec, _angle(s, d), _angle(t, d))):.12f}")


@cli.command()
@click.argument("spec_path", metavar="SPEC")
@click.argument("a", type=float)
@click.argument("b", type=float)
@click.pass_context
def ldiv(ctx: click.Context, spec_path: str, a: float, b: float) -> None:
    """Print the solution y of A * y = B."""
    spec = _build(spec_path, ctx.obj)
    _require_valid(spec)
    d = ctx.obj["degrees"]
    click.echo(f"{_snap(ops.ldiv(spec, _angle(a, d), _angle(b, d))):.12f}")


@cli.command()
@click.argument("spec_path", metavar="SPEC")
@click.argument("b", type=float)
@click.argument("a", type=float)
@click.pass_context
def rdiv(ctx: click.Context, spec_path: str, b: float, a: float) -> None:
    """Print the solution x of x * A = B."""
    spec = _build(spec_path, ctx.obj)
    _require_valid(spec)
    d = ctx.obj["degrees"]
    click.echo(f"{_snap(ops.rdiv(spec, _angle(b, d), _angle(a, d))):.12f}")


@cli.command()
@click.argument("spec_path", metavar="SPEC")
@click.option("-n", "size", type=int, required=True, help="Angles per axis minus one.")
@click.option("-o", "--out", "out_path", required=True, type=click.Path(), help="Output CSV.")
@click.pass_context
def table(ctx: click.Context, spec_path: str, size: int, out_path: str) -> None:
    """Write the (n+1) x (n+1) multiplication table as CSV rows s,t,mul."""
    if size < 2:
        _fail(f"table size must be >= 2, got {size}", EXIT_ERROR)
    spec = _build(spec_path, ctx.obj)
    _require_valid(spec)
    angles = TWO_PI * np.arange(size + 1) / (size + 1)
    ss, tt = np.meshgrid(angles, angles, indexing="ij")
    products = _snap(ops.mul(spec, ss, tt))
    lines = ["s,t,mul"]
    for s, t, p in zip(ss.ravel(), tt.ravel(), products.ravel()):
        lines.append(f"{s:.12g},{t:.12g},{p:.12g}")
    _write_csv(out_path, lines)
    click.echo(f"wrote {len(lines) - 1} rows to {out_path}")


@cli.command("plot-data")
@click.argument("spec_path", metavar="SPEC")
@click.option("-o", "--out", "out_path", required=True, type=click.Path(), help="Output CSV.")
@click.pass_context
def plot_data(ctx: click.Context, spec_path: str, out_path: str) -> None:
    """Write t, f(t), g(t), h(t), disc(t) over the validation grid as CSV."""
    spec = _build(spec_path, ctx.obj)
    _require_valid(spec)
    n = spec.report.grid_n
    ts = np.linspace(0.0, TWO_PI, n, endpoint=False)
    fh = spec.f_inv(ts)
    f = 1.0 / fh
    fp = -spec.f_inv.derivative_at(ts) / (fh * fh)
    g = spec.g(ts)
    gp = spec.g.derivative_at(ts)
    h = subfunction_bound(spec.f_inv, ts, grid_n=n)
    disc = fp * fp + g * f * f * fp - gp * f ** 3 - f * f
    lines = ["t,f,g,h,disc"]
    for row in zip(ts, f, g, h, disc):
        lines.append(",".join(f"{v:.12g}" for v in row))
    _write_csv(out_path, lines)
    click.echo(f"wrote {len(lines) - 1} rows to {out_path}")


def _write_csv(path: str, lines: list[str]) -> None:
    try:
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    except OSError as exc:
        _fail(f"cannot write {path}: {exc}", EXIT_ERROR)


@cli.command()
@click.argument("spec_path", metavar="SPEC")
@click.option("--suite", default="all", help="axioms | baer | isomorphism | oracle | psl2 | all.")
@click.option("--seed", type=int, default=verify.DEFAULT_SEED, show_default=True,
              help="Seed for randomized suites.")
@click.option("--skip-validation", is_flag=True,
              help="Run suites even on an inadmissible spec (diagnostics).")
@click.pass_context
def check(ctx: click.Context, spec_path: str, suite: str, seed: int,
          skip_validation: bool) -> None:
    """Run verification suites; exit 3 if any fails."""
    spec = _build(spec_path, ctx.obj)
    if not skip_validation:
        _require_valid(spec)
    try:
        results = verify.run_suite(spec, suite, seed=seed)
    except UnknownSuiteError as exc:
        _fail(str(exc), EXIT_ERROR)
    failed = False
    for res in results:
        informational = suite == "all" and res.suite_name == "psl2"
        status = "PASS" if res.passed else ("INFO" if informational else "FAIL")
        if not res.passed and not informational:
            failed = True
        seed_note = "" if res.seed is None else f" seed={res.seed}"
        click.echo(
            f"{status} {res.suite_name}: cases={res.cases_run} "
            f"worst={res.worst_violation:.6g} tol={res.tolerance:g}{seed_note}"
        )
        if res.suite_name == "baer":
            for name, where, value in res.details:
                if name == "eta-min-step":
                    click.echo(f"  min eta forward step {value:.6g} at (beta, t)={where}")
        if not res.passed:
            for name, where, value in res.details:
                if value > res.tolerance:
                    click.echo(f"  {name} at {where}: {value:.6g}")
    sys.exit(EXIT_SUITE_FAILURE if failed else EXIT_OK)


def main() -> None:
    try:
        cli.main(standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        sys.exit(EXIT_ERROR)
    except click.exceptions.Abort:
        sys.exit(EXIT_ERROR)


if __name__ == "__main__":
    main()
