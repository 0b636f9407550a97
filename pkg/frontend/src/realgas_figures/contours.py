"""Density contour figures from 2-D structured VTK fields."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .readers import read_structured_vtk  # noqa: E402

__all__ = ["ContourSpec", "collect_contour_data", "plot_2d_contours", "main"]


@dataclass(frozen=True)
class ContourSpec:
    path: str
    output: str
    variable: str = "rho"
    levels: int = 30  # equispaced between field min and max
    filled: bool = False
    title: str = ""


def collect_contour_data(spec: ContourSpec):
    """Load the field; pure file reading, no physics."""
    x, y, fields = read_structured_vtk(spec.path)
    if spec.variable not in fields:
        raise ValueError(
            f"{spec.path}: no field {spec.variable!r} (has {sorted(fields)})")
    return x, y, fields[spec.variable]


def plot_2d_contours(spec: ContourSpec) -> str:
    """Render equal-aspect contours of one field; returns the output path."""
    x, y, z = collect_contour_data(spec)
    lo, hi = float(np.min(z)), float(np.max(z))
    if hi <= lo:
        levels = np.linspace(lo - 0.5, lo + 0.5, 3)
    else:
        levels = np.linspace(lo, hi, spec.levels)
    fig, ax = plt.subplots(figsize=(9, 9 * (y[-1] - y[0]) / max(x[-1] - x[0], 1e-300)))
    draw = ax.contourf if spec.filled else ax.contour
    cs = draw(x, y, z.T, levels=levels, linewidths=None if spec.filled else 0.7)
    ax.set_aspect("equal")
    ax.set_xlabel("x [cm]")
    ax.set_ylabel("y [cm]")
    if spec.title:
        ax.set_title(spec.title)
    fig.colorbar(cs, ax=ax, shrink=0.8)
    fig.tight_layout()
    fig.savefig(spec.output, dpi=150)
    plt.close(fig)
    return spec.output


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="realgas-contours",
        description="density contour figure from a structured VTK field")
    parser.add_argument("vtk", help="legacy-ASCII structured points file")
    parser.add_argument("--out", required=True)
    parser.add_argument("--variable", default="rho")
    parser.add_argument("--levels", type=int, default=30)
    parser.add_argument("--filled", action="store_true")
    parser.add_argument("--title", default="")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        out = plot_2d_contours(ContourSpec(args.vtk, args.out, args.variable,
                                           args.levels, args.filled, args.title))
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
