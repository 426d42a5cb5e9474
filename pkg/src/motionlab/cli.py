"""Command-line surface.

Exit codes: 0 success, 1 a verify check failed, 2 usage error, 3 domain
error (the error class name goes to stderr).  Grid sweeps fan out to a
process pool sized by --jobs and rows are sorted before emission, so output
is deterministic.  MOTIONLAB_SEED overrides the built-in default seed; an
explicit --seed beats both.
"""

from __future__ import annotations

import functools
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import click

from . import bounds as bd
from . import config as cfg
from . import dimest
from . import motion as mo
from . import verify as vf
from .errors import MotionlabError
from .ifs import ChaosGame, Deterministic, cloud_from_csv, cloud_to_csv, render_limit_set

DEFAULT_SEED = 42


def default_seed() -> int:
    return int(os.environ.get("MOTIONLAB_SEED", DEFAULT_SEED))


def domain_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except MotionlabError as exc:
            click.echo(f"{type(exc).__name__}: {exc}", err=True)
            sys.exit(3)

    return wrapper


def emit_report(report, csv_out, fig_out):
    click.echo(report.to_text())
    if csv_out:
        with open(csv_out, "w") as fh:
            fh.write(report.to_csv())
    if fig_out:
        from . import plotting

        plotting.report_residuals(report, fig_out)
    if not report.passed:
        sys.exit(1)


@click.group()
def main():
    """Holomorphic motions with prescribed fractal dimension: build, render,
    estimate, bound, verify."""


@main.command()
@click.option("--ratios", required=True, help="comma-separated ratios in (0,1)")
@click.option("--c", "c", type=float, default=1.0, show_default=True)
@domain_errors
def simdim(ratios, c):
    """Similarity dimension: the root s of sum ratio_j^s = c."""
    from .ifs import similarity_dimension

    values = [float(r) for r in ratios.split(",") if r.strip()]
    click.echo(f"{similarity_dimension(values, c):.17g}")


# ---------------------------------------------------------------- motion --


@main.group()
def motion():
    """Build, evaluate and render motions."""


@motion.command("build")
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True, type=click.Path())
@domain_errors
def motion_build(config_path, out_path):
    """Build the motion and serialize it back with centers materialized."""
    m = cfg.load_motion(config_path)
    cfg.save_motion(m, out_path)
    kind = "astala" if isinstance(m, mo.AstalaMotion) else "composite"
    click.echo(f"built {kind} motion -> {out_path}")


def _dim_rows(args):
    m_dict, lams = args
    m = cfg.motion_from_dict(m_dict)
    return [(lam.real, lam.imag, m.dimension(lam)) for lam in lams]


@motion.command("dim")
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--lambda", "lam", default=None, help="point `a+bi`")
@click.option("--grid", type=int, default=None, help="N x N mesh clipped to |lambda| <= 0.95")
@click.option("--out", "out_path", type=click.Path(), default=None)
@click.option("--fig", "fig_path", type=click.Path(), default=None)
@click.option("--jobs", type=int, default=None, help="worker processes for grids")
@domain_errors
def motion_dim(config_path, lam, grid, out_path, fig_path, jobs):
    """Closed-form dimension at a point or on a grid (CSV re,im,dim_theory)."""
    m = cfg.load_motion(config_path)
    if (lam is None) == (grid is None):
        raise click.UsageError("give exactly one of --lambda or --grid")
    if lam is not None:
        click.echo(f"{m.dimension(cfg.parse_lambda(lam)):.17g}")
        return
    lams = vf.disk_mesh(grid, 0.95)
    jobs = jobs if jobs is not None else (os.cpu_count() or 1)
    if jobs > 1 and len(lams) > 64:
        chunks = [lams[i::jobs] for i in range(jobs)]
        m_dict = cfg.motion_to_dict(m)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = [r for part in pool.map(_dim_rows, [(m_dict, c) for c in chunks]) for r in part]
    else:
        rows = [(l.real, l.imag, m.dimension(l)) for l in lams]
    rows.sort()
    lines = ["re,im,dim_theory"]
    lines += [f"{a:.17g},{b:.17g},{d:.17g}" for a, b, d in rows]
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
        click.echo(f"wrote {len(rows)} rows -> {out_path}")
    else:
        click.echo(text, nl=False)
    if fig_path:
        from . import plotting

        plotting.dimension_grid(rows, fig_path)


@motion.command("render")
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--lambda", "lam", required=True, help="point `a+bi`")
@click.option("--method", type=click.Choice(["chaos", "det"]), required=True)
@click.option("--points", type=int, default=None, help="chaos orbit length")
@click.option("--depth", type=int, default=None, help="deterministic depth")
@click.option("--seed", type=int, default=None)
@click.option("--out", "out_path", required=True, type=click.Path())
@domain_errors
def motion_render(config_path, lam, method, points, depth, seed, out_path):
    """Render the limit set at lambda to a cloud CSV."""
    m = cfg.load_motion(config_path)
    lam_c = cfg.parse_lambda(lam)
    if method == "chaos":
        if points is None:
            raise click.UsageError("--method chaos needs --points")
        spec = ChaosGame(points, seed if seed is not None else default_seed())
    else:
        if depth is None:
            raise click.UsageError("--method det needs --depth")
        spec = Deterministic(depth)
    cloud = mo.motion_cloud(m, lam_c, spec)
    with open(out_path, "w") as fh:
        fh.write(cloud_to_csv(cloud))
    click.echo(f"wrote {len(cloud)} points -> {out_path}")


# ------------------------------------------------------------------- dim --


@main.group(name="dim")
def dim_group():
    """Dimension estimation from clouds."""


@dim_group.command("estimate")
@click.option("--cloud", "cloud_path", required=True, type=click.Path(exists=True))
@click.option("--kmin", type=int, default=0, show_default=True)
@click.option("--kmax", type=int, default=16, show_default=True)
@click.option("--auto", "auto", is_flag=True, help="auto window inside [kmin, kmax]")
@click.option("--packing", is_flag=True, help="greedy disk packing instead of boxes")
@click.option("--sat-exp", type=float, default=dimest.SATURATION_EXPONENT,
              show_default=True, help="saturation-guard exponent for --auto")
@click.option("--csv-out", type=click.Path(), default=None, help="append-style CSV row")
@click.option("--fig", "fig_path", type=click.Path(), default=None)
@domain_errors
def dim_estimate(cloud_path, kmin, kmax, auto, packing, sat_exp, csv_out, fig_path):
    """Estimate the dimension of a cloud CSV; prints a key-value block."""
    cloud = cloud_from_csv(open(cloud_path).read())
    if packing:
        deltas = [2.0**-k for k in range(kmin, kmax + 1)]
        counts = dimest.packing_counts(cloud, deltas)
    else:
        counts = dimest.dyadic_box_counts(cloud, kmin, kmax)
    window = "auto" if auto else _full_window(counts)
    est = dimest.minkowski_estimate(counts, window, sat_exponent=sat_exp)
    click.echo(est.as_text())
    if csv_out:
        with open(csv_out, "w") as fh:
            fh.write("label,value,window_lo,window_hi,stderr,r_squared\n")
            fh.write(dimest.estimate_csv_row(os.path.basename(cloud_path), est) + "\n")
    if fig_path:
        from . import plotting

        x, y = counts.log_points()
        plotting.loglog_counts(x, y, est.value, (float(x.mean()), float(y.mean())), fig_path)


def _full_window(counts):
    scales = counts.scales()
    return (scales[0], scales[-1])


# ---------------------------------------------------------------- bounds --


@main.group(name="bounds")
def bounds_group():
    """Closed-form quasiconformal distortion bounds."""


def _sweep_rows(fn, lo, hi, steps):
    xs = [lo + (hi - lo) * i / (steps - 1) for i in range(steps)]
    rows = []
    for x in xs:
        for name, value in fn(x):
            rows.append((name, x, value))
    return rows


def _emit_sweep(rows, out_path, fig_path, xlabel):
    lines = ["param,value,bound"]
    lines += [f"{n},{x:.17g},{b:.17g}" for n, x, b in rows]
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    if fig_path:
        from . import plotting

        series = {}
        for n, x, b in rows:
            series.setdefault(n, ([], []))
            series[n][0].append(x)
            series[n][1].append(b)
        plotting.bound_curves(series, fig_path, xlabel=xlabel)


@bounds_group.command("dim")
@click.option("--dim", "dim_a", type=float, required=True)
@click.option("--k", type=float, default=None)
@click.option("--sweep", is_flag=True, help="sweep k over [--lo, --hi]")
@click.option("--lo", type=float, default=0.0, show_default=True)
@click.option("--hi", type=float, default=0.95, show_default=True)
@click.option("--steps", type=int, default=50, show_default=True)
@click.option("--out", "out_path", type=click.Path(), default=None)
@click.option("--fig", "fig_path", type=click.Path(), default=None)
@domain_errors
def bounds_dim(dim_a, k, sweep, lo, hi, steps, out_path, fig_path):
    """Dimension interval for a k-quasiconformal image."""
    if sweep:
        rows = _sweep_rows(
            lambda kk: zip(("dim_lo", "dim_hi"), bd.dim_distortion_interval(dim_a, kk)),
            lo, hi, steps,
        )
        _emit_sweep(rows, out_path, fig_path, "k")
        return
    if k is None:
        raise click.UsageError("give --k or --sweep")
    lo_v, hi_v = bd.dim_distortion_interval(dim_a, k)
    click.echo(f"lo={lo_v:.17g}")
    click.echo(f"hi={hi_v:.17g}")


@bounds_group.command("area")
@click.option("--area", type=float, required=True)
@click.option("--k", type=float, default=None)
@click.option("--case", type=click.Choice(["on", "off", "general"]), default="general",
              show_default=True)
@click.option("--sweep", is_flag=True)
@click.option("--lo", type=float, default=0.0, show_default=True)
@click.option("--hi", type=float, default=0.95, show_default=True)
@click.option("--steps", type=int, default=50, show_default=True)
@click.option("--out", "out_path", type=click.Path(), default=None)
@click.option("--fig", "fig_path", type=click.Path(), default=None)
@domain_errors
def bounds_area(area, k, case, sweep, lo, hi, steps, out_path, fig_path):
    """Area bound for a k-quasiconformal image (capacity <= 1 normalization)."""
    if sweep:
        rows = _sweep_rows(
            lambda kk: [(f"area_{case}", bd.area_distortion_bound(area, kk, case))],
            lo, hi, steps,
        )
        _emit_sweep(rows, out_path, fig_path, "k")
        return
    if k is None:
        raise click.UsageError("give --k or --sweep")
    click.echo(f"{bd.area_distortion_bound(area, k, case):.17g}")
    click.echo(f"note: {bd.AREA_NORMALIZATION_NOTE}")


@bounds_group.command("smirnov")
@click.option("--k", type=float, default=None)
@click.option("--sweep", is_flag=True)
@click.option("--lo", type=float, default=0.0, show_default=True)
@click.option("--hi", type=float, default=0.95, show_default=True)
@click.option("--steps", type=int, default=50, show_default=True)
@click.option("--out", "out_path", type=click.Path(), default=None)
@click.option("--fig", "fig_path", type=click.Path(), default=None)
@domain_errors
def bounds_smirnov(k, sweep, lo, hi, steps, out_path, fig_path):
    """Quasicircle dimension bound 1 + k^2."""
    if sweep:
        rows = _sweep_rows(lambda kk: [("smirnov", bd.smirnov_quasicircle_bound(kk))],
                           lo, hi, steps)
        _emit_sweep(rows, out_path, fig_path, "k")
        return
    if k is None:
        raise click.UsageError("give --k or --sweep")
    click.echo(f"{bd.smirnov_quasicircle_bound(k):.17g}")


@bounds_group.command("qs")
@click.option("--delta", type=float, required=False, default=None)
@click.option("--k", type=float, required=False, default=None)
@click.option("--sweep", type=click.Choice(["delta", "k"]), default=None)
@click.option("--lo", type=float, default=None)
@click.option("--hi", type=float, default=None)
@click.option("--steps", type=int, default=50, show_default=True)
@click.option("--out", "out_path", type=click.Path(), default=None)
@click.option("--fig", "fig_path", type=click.Path(), default=None)
@domain_errors
def bounds_qs(delta, k, sweep, lo, hi, steps, out_path, fig_path):
    """Quasisymmetric distortion spectrum (Delta, Delta_star)."""
    if sweep:
        if sweep == "k":
            if delta is None:
                raise click.UsageError("sweeping k needs --delta")
            lo = 0.0 if lo is None else lo
            hi = 0.95 if hi is None else hi
            fn = lambda kk: zip(("Delta", "Delta_star"),
                                bd.quasisymmetric_spectrum(delta, kk)[:2])
        else:
            if k is None:
                raise click.UsageError("sweeping delta needs --k")
            lo = 0.02 if lo is None else lo
            hi = 1.0 if hi is None else hi
            fn = lambda dd: zip(("Delta", "Delta_star"),
                                bd.quasisymmetric_spectrum(dd, k)[:2])
        _emit_sweep(_sweep_rows(fn, lo, hi, steps), out_path, fig_path, sweep)
        return
    if delta is None or k is None:
        raise click.UsageError("give --delta and --k, or --sweep")
    spec = bd.quasisymmetric_spectrum(delta, k)
    click.echo(f"Delta={spec.lower:.17g}")
    click.echo(f"Delta_star={spec.upper:.17g}")
    click.echo(f"clamped={spec.clamped}")


# ---------------------------------------------------------------- verify --


@main.group(name="verify")
def verify_group():
    """Numerical property checks on a configured motion."""


def _report_options(fn):
    fn = click.option("--csv-out", type=click.Path(), default=None)(fn)
    fn = click.option("--fig", "fig_path", type=click.Path(), default=None)(fn)
    return fn


@verify_group.command("mean-value")
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--mode", type=click.Choice(["harmonic", "super", "sub"]),
              default="harmonic", show_default=True)
@click.option("--grid", type=int, default=7, show_default=True)
@click.option("--radius", type=float, default=0.25, show_default=True)
@click.option("--samples", type=int, default=vf.CIRCLE_SAMPLES, show_default=True)
@click.option("--tol", type=float, default=1e-9, show_default=True)
@_report_options
@domain_errors
def verify_mean_value(config_path, mode, grid, radius, samples, tol, csv_out, fig_path):
    """Mean-value residuals: harmonic members (harmonic), reciprocal dimension
    envelope (super), or log-dimension (sub)."""
    from . import harmonic as hm

    m = cfg.load_motion(config_path)
    centers = vf.disk_mesh(grid, 0.9 - radius)
    if mode == "harmonic":
        h = m.h if isinstance(m, mo.AstalaMotion) else m.components[0].motion.h
        f = lambda z: hm.eval_harmonic(h, z)
    elif mode == "super":
        f = lambda z: 1.0 / m.dimension(z)
    else:
        f = lambda z: math.log(m.dimension(z))
    report = vf.mean_value_grid(f, centers, radius, mode, samples, tol)
    emit_report(report, csv_out, fig_path)


@verify_group.command("diameter-harnack")
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--rho", type=float, default=0.9, show_default=True)
@click.option("--grid", type=int, default=5, show_default=True)
@click.option("--grid-radius", type=float, default=0.5, show_default=True)
@click.option("--addresses", default="0;1", show_default=True,
              help="semicolon-separated comma-addresses, e.g. `0;1;0,1`")
@click.option("--tol", type=float, default=1e-9, show_default=True)
@_report_options
@domain_errors
def verify_diameter_harnack(config_path, rho, grid, grid_radius, addresses, tol,
                            csv_out, fig_path):
    """Log-diameter distortion bound along the motion."""
    m = cfg.load_motion(config_path)
    if isinstance(m, mo.CompositeMotion):
        m = m.components[0].motion
    addr = [[int(i) for i in part.split(",")] for part in addresses.split(";")]
    lams = [z for z in vf.disk_mesh(grid, grid_radius)]
    report = vf.check_diameter_harnack(m, addr, lams, rho, tol=tol)
    emit_report(report, csv_out, fig_path)


@verify_group.command("sandwich")
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--kmax", type=float, default=0.9, show_default=True)
@click.option("--ksteps", type=int, default=10, show_default=True)
@click.option("--slack", type=float, default=1e-9, show_default=True)
@_report_options
@domain_errors
def verify_sandwich(config_path, kmax, ksteps, slack, csv_out, fig_path):
    """Reciprocal-dimension distortion sandwich over a k grid."""
    m = cfg.load_motion(config_path)
    k_grid = [kmax * i / (ksteps - 1) for i in range(ksteps)]
    report = vf.check_distortion_sandwich(m, k_grid, slack)
    emit_report(report, csv_out, fig_path)


@verify_group.command("qsh")
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--circle-samples", type=int, default=16, show_default=True)
@_report_options
@domain_errors
def verify_qsh(config_path, circle_samples, csv_out, fig_path):
    """Center dimension versus the max over |lambda| = 1/2 (consistency run)."""
    m = cfg.load_motion(config_path)
    report = vf.run_qsh_experiment(m, circle_samples)
    emit_report(report, csv_out, fig_path)


@verify_group.command("estimator")
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--lambdas", default="0", show_default=True,
              help="semicolon-separated points `a+bi`")
@click.option("--points", type=int, default=200000, show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--kmin", type=int, default=2, show_default=True)
@click.option("--kmax", type=int, default=20, show_default=True)
@click.option("--packing", is_flag=True)
@click.option("--tol", type=float, default=0.07, show_default=True)
@click.option("--sweep-out", type=click.Path(), default=None,
              help="CSV re,im,dim_theory,dim_est")
@_report_options
@domain_errors
def verify_estimator(config_path, lambdas, points, seed, kmin, kmax, packing, tol,
                     sweep_out, csv_out, fig_path):
    """Box/packing estimates on rendered clouds versus the closed form."""
    m = cfg.load_motion(config_path)
    if isinstance(m, mo.CompositeMotion):
        m = m.components[0].motion
    lams = [cfg.parse_lambda(s) for s in lambdas.split(";")]
    seed = seed if seed is not None else default_seed()
    est_cfg = vf.EstimatorConfig(kmin, kmax, "auto", "packing" if packing else "box")
    report = vf.check_estimator_vs_theory(m, lams, ChaosGame(points, seed), est_cfg, tol)
    if sweep_out:
        rows = sorted(
            (lam.real, lam.imag, theory, est)
            for lam, theory, est in report.extra["estimates"]
        )
        with open(sweep_out, "w") as fh:
            fh.write("re,im,dim_theory,dim_est\n")
            for a, b, t, e in rows:
                fh.write(f"{a:.17g},{b:.17g},{t:.17g},{e:.17g}\n")
    emit_report(report, csv_out, fig_path)


# ------------------------------------------------------------------ plot --


@main.command("plot")
@click.option("--cloud", "cloud_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--size", type=int, default=800, show_default=True)
@domain_errors
def plot_cmd(cloud_path, out_path, size):
    """Scatter plot of a cloud CSV (SVG output is byte-deterministic)."""
    from . import plotting

    cloud = cloud_from_csv(open(cloud_path).read())
    meta = cloud.meta
    title = f"method={meta.get('method', '?')} seed={meta.get('seed', '?')} n={len(cloud)}"
    plotting.scatter_cloud(cloud.points, out_path, size, title)
    click.echo(f"wrote {out_path}")


if __name__ == "__main__":
    main()
