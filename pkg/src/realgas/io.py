"""Deterministic output writers: CSV for 1-D profiles, legacy-ASCII VTK
structured points for 2-D fields.

Values are printed with 17 significant digits so a double round-trips
losslessly; identical inputs produce byte-identical files.
"""

from __future__ import annotations

import os

import numpy as np

from .scheme import Snapshot1D, Snapshot2D

__all__ = ["write_csv_1d", "read_csv_1d", "write_vtk_2d", "read_vtk_2d"]


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_csv_1d(snapshot: Snapshot1D, path: str) -> None:
    """Write `x,rho,u,p,e` rows (one per cell center) with LF endings."""
    n = len(snapshot.x)
    if n == 0:
        raise ValueError("refusing to write an empty snapshot")
    cols = (snapshot.x, snapshot.rho, snapshot.u, snapshot.p, snapshot.e)
    lines = ["x,rho,u,p,e"]
    for i in range(n):
        lines.append(",".join(_fmt(c[i]) for c in cols))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_csv_1d(path: str):
    """Read a profile written by :func:`write_csv_1d`; returns (x, rho, u, p, e)."""
    data = np.genfromtxt(path, delimiter=",", names=True)
    return tuple(np.atleast_1d(data[k]) for k in ("x", "rho", "u", "p", "e"))


def write_vtk_2d(snapshot: Snapshot2D, path: str, title: str = "realgas field") -> None:
    """Write a legacy-ASCII STRUCTURED_POINTS dataset with cell-data scalars
    rho, u, v, p, e.  Dimensions are cells+1 per axis (point counts)."""
    nx, ny = snapshot.rho.shape
    if nx == 0 or ny == 0:
        raise ValueError("refusing to write an empty snapshot")
    fields = [("rho", snapshot.rho), ("u", snapshot.u), ("v", snapshot.v),
              ("p", snapshot.p), ("e", snapshot.e)]
    for name, arr in fields:
        if not np.all(np.isfinite(arr)):
            raise ValueError(f"refusing to write non-finite values in field {name!r}")
    dx = snapshot.x[1] - snapshot.x[0] if nx > 1 else 1.0
    dy = snapshot.y[1] - snapshot.y[0] if ny > 1 else 1.0
    x0 = snapshot.x[0] - 0.5 * dx
    y0 = snapshot.y[0] - 0.5 * dy
    lines = [
        "# vtk DataFile Version 3.0",
        title,
        "ASCII",
        "DATASET STRUCTURED_POINTS",
        f"DIMENSIONS {nx + 1} {ny + 1} 1",
        f"ORIGIN {_fmt(x0)} {_fmt(y0)} 0",
        f"SPACING {_fmt(dx)} {_fmt(dy)} 1",
        f"CELL_DATA {nx * ny}",
    ]
    for name, arr in fields:
        lines.append(f"SCALARS {name} double 1")
        lines.append("LOOKUP_TABLE default")
        # VTK cell ordering: x fastest, then y
        flat = np.asarray(arr).T.reshape(-1)
        lines.extend(_fmt(v) for v in flat)
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_vtk_2d(path: str):
    """Read a file written by :func:`write_vtk_2d`; returns
    (x_centers, y_centers, {name: (nx, ny) array})."""
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    if lines[3] != "DATASET STRUCTURED_POINTS":
        raise ValueError(f"not a structured-points file: {path}")
    dims = tuple(int(v) for v in lines[4].split()[1:])
    origin = [float(v) for v in lines[5].split()[1:]]
    spacing = [float(v) for v in lines[6].split()[1:]]
    nx, ny = dims[0] - 1, dims[1] - 1
    n_cells = int(lines[7].split()[1])
    assert n_cells == nx * ny
    fields = {}
    k = 8
    while k < len(lines):
        if not lines[k].startswith("SCALARS"):
            k += 1
            continue
        name = lines[k].split()[1]
        vals = np.array([float(v) for v in lines[k + 2:k + 2 + n_cells]])
        fields[name] = vals.reshape(ny, nx).T
        k += 2 + n_cells
    x = origin[0] + (np.arange(nx) + 0.5) * spacing[0]
    y = origin[1] + (np.arange(ny) + 0.5) * spacing[1]
    return x, y, fields


def output_dir(configured: str) -> str:
    """Resolve the output directory, honoring the REALGAS_OUT override."""
    return os.environ.get("REALGAS_OUT", configured)
