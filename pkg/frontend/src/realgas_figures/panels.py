"""Four-panel 1-D comparison figures (density, velocity, pressure,
internal energy) overlaying scheme outputs on the exact reference."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .readers import read_profile_csv  # noqa: E402

__all__ = ["PanelSpec", "Series", "collect_panel_data", "plot_1d_panels", "main"]

VARIABLES = (("rho", "density [g/cm^3]"), ("u", "velocity [cm/us]"),
             ("p", "pressure [Mbar]"), ("e", "internal energy [Mbar cm^3/g]"))


@dataclass(frozen=True)
class Series:
    path: str
    label: str
    reference: bool = False  # drawn as a line; scheme outputs use markers


@dataclass(frozen=True)
class PanelSpec:
    series: tuple
    output: str
    title: str = ""
    x_label: str = "x [cm]"
    variables: tuple = field(default=tuple(v for v, _ in VARIABLES))


def collect_panel_data(spec: PanelSpec) -> list:
    """Load every series; pure file reading, no physics.

    Scheme series must share their x-grid; the reference may use its own
    (it is typically sampled densely)."""
    loaded = [(s, read_profile_csv(s.path)) for s in spec.series]
    if not loaded:
        raise ValueError("panel spec lists no series")
    grids = [d["x"] for s, d in loaded if not s.reference]
    for g in grids[1:]:
        if g.shape != grids[0].shape or not np.array_equal(g, grids[0]):
            raise ValueError("scheme series do not share the x-grid")
    return loaded


def plot_1d_panels(spec: PanelSpec) -> str:
    """Render the 2x2 comparison figure; returns the output path."""
    loaded = collect_panel_data(spec)
    fig, axes = plt.subplots(2, 2, figsize=(11, 8))
    for ax, (var, label) in zip(axes.ravel(), VARIABLES):
        if var not in spec.variables:
            ax.set_visible(False)
            continue
        for s, data in loaded:
            if s.reference:
                ax.plot(data["x"], data[var], "-", lw=1.4, color="0.15", label=s.label)
            else:
                ax.plot(data["x"], data[var], marker="o", ms=2.6, lw=0.9,
                        alpha=0.85, label=s.label)
        ax.set_xlabel(spec.x_label)
        ax.set_ylabel(label)
        ax.grid(alpha=0.25)
    axes[0, 0].legend(fontsize=8)
    if spec.title:
        fig.suptitle(spec.title)
    fig.tight_layout()
    fig.savefig(spec.output, dpi=150)
    plt.close(fig)
    return spec.output


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="realgas-panels",
        description="4-panel 1-D comparison figure from solver CSV profiles")
    parser.add_argument("profiles", nargs="+",
                        help="CSV profiles as path[:label]; prefix the exact "
                             "reference with ref=")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--title", default="")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    series = []
    for item in args.profiles:
        ref = item.startswith("ref=")
        if ref:
            item = item[4:]
        path, _, label = item.partition(":")
        series.append(Series(path, label or path, reference=ref))
    try:
        out = plot_1d_panels(PanelSpec(tuple(series), args.out, title=args.title))
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
