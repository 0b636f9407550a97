"""Readers for the solver's on-disk formats.

These are deliberately independent of the solver package: the figure
scripts couple to the *file formats* only (CSV `x,rho,u,p,e` profiles and
legacy-ASCII VTK structured points with cell-data scalars) and never
recompute physics.
"""

from __future__ import annotations

import numpy as np

__all__ = ["read_profile_csv", "read_structured_vtk", "MalformedFileError"]

PROFILE_COLUMNS = ("x", "rho", "u", "p", "e")


class MalformedFileError(ValueError):
    """Input file does not match the expected format; carries an offset."""

    def __init__(self, path, message, line=None):
        loc = f"{path}:{line}" if line is not None else path
        super().__init__(f"{loc}: {message}")
        self.path = path
        self.line = line


def read_profile_csv(path: str) -> dict:
    """Read a 1-D profile; returns {column: array} for x, rho, u, p, e.

    The first column is also accepted under the name ``xi`` (reference
    profiles are written against the similarity coordinate)."""
    with open(path) as fh:
        header = fh.readline().strip()
        names = header.split(",")
        if names and names[0] == "xi":
            names = ["x"] + names[1:]
        if tuple(names) != PROFILE_COLUMNS:
            raise MalformedFileError(path, f"unexpected header {header!r}", line=1)
        try:
            data = np.loadtxt(fh, delimiter=",", ndmin=2)
        except ValueError as exc:
            raise MalformedFileError(path, f"bad numeric row: {exc}") from exc
    if data.shape[0] == 0 or data.shape[1] != 5:
        raise MalformedFileError(path, "profile must have rows of 5 columns")
    return {name: data[:, k] for k, name in enumerate(PROFILE_COLUMNS)}


def read_structured_vtk(path: str) -> tuple:
    """Read a legacy-ASCII STRUCTURED_POINTS file with cell-data scalars.

    Returns (x_centers, y_centers, {name: (nx, ny) array})."""
    with open(path) as fh:
        lines = fh.read().split("\n")

    def need(idx, startswith):
        if idx >= len(lines) or not lines[idx].startswith(startswith):
            raise MalformedFileError(path, f"expected {startswith!r}", line=idx + 1)
        return lines[idx]

    need(0, "# vtk DataFile")
    need(2, "ASCII")
    need(3, "DATASET STRUCTURED_POINTS")
    dims = need(4, "DIMENSIONS").split()[1:]
    nx, ny = int(dims[0]) - 1, int(dims[1]) - 1
    origin = [float(v) for v in need(5, "ORIGIN").split()[1:]]
    spacing = [float(v) for v in need(6, "SPACING").split()[1:]]
    n_cells = int(need(7, "CELL_DATA").split()[1])
    if n_cells != nx * ny:
        raise MalformedFileError(path, "CELL_DATA count does not match dimensions", line=8)

    fields = {}
    k = 8
    while k < len(lines):
        line = lines[k]
        if not line.strip():
            k += 1
            continue
        if not line.startswith("SCALARS"):
            raise MalformedFileError(path, f"unexpected content {line!r}", line=k + 1)
        name = line.split()[1]
        need(k + 1, "LOOKUP_TABLE")
        chunk = lines[k + 2:k + 2 + n_cells]
        if len(chunk) < n_cells:
            raise MalformedFileError(path, f"field {name!r} truncated", line=k + 2)
        try:
            vals = np.array([float(v) for v in chunk])
        except ValueError as exc:
            raise MalformedFileError(path, f"field {name!r}: {exc}", line=k + 2) from exc
        if not np.all(np.isfinite(vals)):
            bad = int(np.argmax(~np.isfinite(vals)))
            raise MalformedFileError(path, f"field {name!r} has a non-finite value",
                                     line=k + 3 + bad)
        fields[name] = vals.reshape(ny, nx).T
        k += 2 + n_cells
    x = origin[0] + (np.arange(nx) + 0.5) * spacing[0]
    y = origin[1] + (np.arange(ny) + 0.5) * spacing[1]
    return x, y, fields
