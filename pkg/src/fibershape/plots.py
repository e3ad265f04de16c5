"""Figure rendering. Everything is written straight to files (Agg backend)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .calibration import PowerLawModel
from .metrics import ErrorReport, GroundTruth
from .profiles import PlanarShape


def plot_shape(shape: PlanarShape, path: str | Path, title: str | None = None) -> None:
    """Render a reconstructed polyline to an image file (format from suffix)."""
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.plot(shape.points[:, 0], shape.points[:, 1], "-", color="tab:blue", lw=1.5)
    ax.plot(*shape.points[0], "ko", ms=4)
    ax.plot(*shape.points[-1], "k^", ms=5)
    ax.set_xlabel("x (mm)")
    ax.set_ylabel("y (mm)")
    ax.set_aspect("equal", adjustable="datalim")
    ax.grid(True, alpha=0.3)
    if title:
        ax.set_title(title)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)


def plot_overlay(
    recon: PlanarShape,
    truth: GroundTruth,
    path: str | Path,
    report: ErrorReport | None = None,
    title: str | None = None,
) -> None:
    """Overlay a reconstruction on its ground truth, annotated with the errors."""
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.plot(
        truth.shape.points[:, 0], truth.shape.points[:, 1],
        "--", color="0.4", lw=1.2, label="expected",
    )
    ax.plot(
        recon.points[:, 0], recon.points[:, 1],
        "-", color="tab:red", lw=1.5, label="reconstructed",
    )
    ax.set_xlabel("x (mm)")
    ax.set_ylabel("y (mm)")
    ax.set_aspect("equal", adjustable="datalim")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="best", fontsize=8)
    if report is not None:
        ax.set_title(
            f"tip {report.tip_error:.3f} mm, shape {report.shape_error:.3f} mm, "
            f"area {report.area_error_avg:.3f} mm$^2$",
            fontsize=9,
        )
    elif title:
        ax.set_title(title)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)


def plot_calibration(
    points: list[tuple[float, float]] | tuple,
    model: PowerLawModel,
    path: str | Path,
) -> None:
    """Log-log scatter of the calibration points with the fitted power law."""
    pts = np.asarray(points, dtype=float)
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.loglog(pts[:, 0], pts[:, 1], "o", color="tab:blue", ms=5, label="slot averages")
    eps = np.geomspace(pts[:, 0].min() * 0.8, pts[:, 0].max() * 1.25, 200)
    ax.loglog(
        eps, model.coefficient * eps**model.exponent,
        "-", color="tab:red", lw=1.2,
        label=f"fit: a={model.coefficient:.4g}, b={model.exponent:.5g}",
    )
    ax.set_xlabel("strain (microstrain)")
    ax.set_ylabel("bend radius (mm)")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(loc="best", fontsize=8)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
