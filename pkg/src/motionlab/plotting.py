"""Matplotlib figure rendering for the report paths.

All figures are written through save_figure, which pins the SVG hash salt
and strips the creation date so output bytes depend only on the input data.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

HASHSALT = "motionlab"
DPI = 100


def save_figure(fig, out_path: str) -> None:
    if str(out_path).lower().endswith(".svg"):
        fig.savefig(out_path, format="svg", metadata={"Date": None})
    else:
        fig.savefig(out_path)
    plt.close(fig)


def _new_figure(size_px: int):
    plt.rcParams["svg.hashsalt"] = HASHSALT
    side = size_px / DPI
    return plt.subplots(figsize=(side, side), dpi=DPI)


def scatter_cloud(points: np.ndarray, out_path: str, size: int = 800,
                  title: str = "") -> None:
    """Scatter plot of a point cloud, equal aspect, written deterministically."""
    fig, ax = _new_figure(size)
    ax.scatter(points.real, points.imag, s=0.5, linewidths=0, color="#1f3d7a")
    ax.set_aspect("equal")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    if title:
        ax.set_title(title)
    save_figure(fig, out_path)


def loglog_counts(x, y, slope: float, intercept_at, out_path: str, size: int = 800,
                  xlabel: str = "log2(1/scale)", ylabel: str = "log2(count)") -> None:
    """Count data with the fitted line overlaid."""
    fig, ax = _new_figure(size)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    ax.plot(x, y, "o", color="#1f3d7a", label="counts")
    xm, ym = intercept_at
    xs = np.linspace(x.min(), x.max(), 2)
    ax.plot(xs, ym + slope * (xs - xm), "-", color="#b03030",
            label=f"slope {slope:.4f}")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.legend()
    save_figure(fig, out_path)


def dimension_grid(rows, out_path: str, size: int = 800) -> None:
    """Colored scatter of (re, im, value) sweep rows."""
    fig, ax = _new_figure(size)
    re = [r[0] for r in rows]
    im = [r[1] for r in rows]
    val = [r[2] for r in rows]
    sc = ax.scatter(re, im, c=val, s=6, cmap="viridis")
    fig.colorbar(sc, ax=ax, label="dimension")
    ax.set_aspect("equal")
    ax.set_xlabel("Re lambda")
    ax.set_ylabel("Im lambda")
    save_figure(fig, out_path)


def bound_curves(series, out_path: str, size: int = 800,
                 xlabel: str = "parameter") -> None:
    """One line per named series: series = {name: (xs, ys)}."""
    fig, ax = _new_figure(size)
    for name, (xs, ys) in sorted(series.items()):
        ax.plot(xs, ys, label=name)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("bound")
    ax.legend()
    save_figure(fig, out_path)


def report_residuals(report, out_path: str, size: int = 800) -> None:
    """Residuals per sample with the tolerance line."""
    fig, ax = _new_figure(size)
    residuals = [r[1] for r in report.rows if math.isfinite(r[1])]
    ax.plot(range(len(residuals)), residuals, ".", color="#1f3d7a")
    ax.axhline(report.tolerance, color="#b03030", label=f"tolerance {report.tolerance:g}")
    ax.set_xlabel("sample")
    ax.set_ylabel("residual")
    ax.set_title(report.name)
    ax.legend()
    save_figure(fig, out_path)
