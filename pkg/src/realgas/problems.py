"""Registry of the five benchmark problems and the 2-D unit scaling.

All quantities are stored in the CGS-Mbar-microsecond working units.  The
quadrant problem is specified in the literature in nondimensional form; it
is registered here redimensionalized with the reference set (100 GPa,
rho0, 0.1 m, 1e-4 s), so its velocity scale is 0.1 cm/us.

Note on the PBX-9502 coefficients: the source table prints A = 1.362e6 and
B = 7.199e4 under an Mbar header, but those magnitudes are the standard
handbook values expressed in MPa (13.62 Mbar and 0.7199 Mbar).  Taken
literally as Mbar they put every quadrant state outside the validity
region of the local stiffened fit (p + p_inf < 0), so the registry stores
the Mbar readings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .eos import CochranChan, EosModel, Jwl
from .errors import RegistryError
from .scheme import Field1D, Field2D

__all__ = [
    "UnitScaling",
    "RP2D_SCALING",
    "ProblemSpec",
    "MATERIALS",
    "load_problem",
    "problem_names",
]


@dataclass(frozen=True)
class UnitScaling:
    """Reference magnitudes tying a nondimensional problem to working units."""

    pressure: float  # Mbar
    density: float  # g/cm^3
    length: float  # cm
    time: float  # us

    @property
    def velocity(self) -> float:
        return self.length / self.time

    @property
    def specific_energy(self) -> float:
        return self.pressure / self.density

    _KINDS = ("pressure", "density", "length", "time", "velocity", "specific_energy")

    def _factor(self, kind: str) -> float:
        if kind not in self._KINDS:
            raise ValueError(f"unknown quantity kind {kind!r}")
        return getattr(self, kind)

    def redimensionalize(self, kind: str, value):
        return np.asarray(value) * self._factor(kind) if np.ndim(value) else value * self._factor(kind)

    def nondimensionalize(self, kind: str, value):
        return np.asarray(value) / self._factor(kind) if np.ndim(value) else value / self._factor(kind)


RP2D_SCALING = UnitScaling(pressure=1.0, density=1.895, length=10.0, time=100.0)


MATERIALS = {
    "nitromethane-cc": CochranChan(rho0=1.134, e0=0.0, Gamma=1.19, A=8192.0,
                                   B=1508.0, eps1=4.53, eps2=1.42),
    "tnt-jwl": Jwl(rho0=1.84, e0=0.0, Gamma=0.25, A=8.545, B=0.205, R1=4.6, R2=1.35),
    "lx17-jwl": Jwl(rho0=1.905, e0=0.0, Gamma=0.8938, A=632.1, B=-0.04472,
                    R1=11.3, R2=1.13),
    # see module notes: handbook values in Mbar for the MPa-printed table
    "pbx9502-jwl": Jwl(rho0=1.895, e0=0.0, Gamma=0.5, A=13.62, B=0.7199,
                       R1=6.2, R2=2.2),
}


@dataclass(frozen=True)
class ProblemSpec:
    """One benchmark: geometry, material, initial regions, run horizon."""

    name: str
    dim: int
    model: EosModel
    x_lo: float
    x_hi: float
    t_final: float
    default_cells: tuple
    init: Callable  # (x) -> (rho, u, p)  |  (X, Y) -> (rho, u, v, p)
    bc: str = "transmissive"
    cfl: float = 0.5
    y_lo: float = 0.0
    y_hi: float = 0.0
    snapshot_times: tuple = ()
    scaling: Optional[UnitScaling] = None
    interface: Optional[float] = None
    left_state: Optional[tuple] = None  # (rho, u, p) for 1-D two-state problems
    right_state: Optional[tuple] = None

    def make_field(self, cells=None):
        """Instantiate the initial finite-volume field at a resolution."""
        if self.dim == 1:
            n = int(cells or self.default_cells[0])
            dx = (self.x_hi - self.x_lo) / n
            x = self.x_lo + (np.arange(n) + 0.5) * dx
            rho, u, p = self.init(x)
            return Field1D.from_primitives(self.x_lo, dx, rho, u, p, self.model,
                                           bc=(self.bc, self.bc))
        if cells is None:
            nx, ny = self.default_cells
        elif np.ndim(cells) == 0:
            nx = int(cells)
            ny = max(4, round(nx * (self.y_hi - self.y_lo) / (self.x_hi - self.x_lo)))
        else:
            nx, ny = (int(c) for c in cells)
        dx = (self.x_hi - self.x_lo) / nx
        dy = (self.y_hi - self.y_lo) / ny
        X, Y = np.meshgrid(self.x_lo + (np.arange(nx) + 0.5) * dx,
                           self.y_lo + (np.arange(ny) + 0.5) * dy, indexing="ij")
        rho, u, v, p = self.init(X, Y)
        return Field2D.from_primitives(self.x_lo, self.y_lo, dx, dy,
                                       rho, u, v, p, self.model, bc=(self.bc,) * 4)


def _two_state(interface, left, right):
    rho_l, u_l, p_l = left
    rho_r, u_r, p_r = right

    def init(x):
        mask = x < interface
        return (np.where(mask, rho_l, rho_r),
                np.where(mask, u_l, u_r),
                np.where(mask, p_l, p_r))

    return init


def _contact_problem() -> ProblemSpec:
    left, right = (1.134, 0.1, 2e4), (0.5, 0.1, 2e4)
    return ProblemSpec(
        name="contact", dim=1, model=MATERIALS["nitromethane-cc"],
        x_lo=0.0, x_hi=100.0, t_final=40.0, default_cells=(100,),
        init=_two_state(50.0, left, right), interface=50.0,
        left_state=left, right_state=right,
    )


def _shyue_problem() -> ProblemSpec:
    left, right = (1.7, 0.0, 10.0), (1.0, 0.0, 0.5)
    return ProblemSpec(
        name="shyue", dim=1, model=MATERIALS["tnt-jwl"],
        x_lo=0.0, x_hi=100.0, t_final=12.0, default_cells=(100,),
        init=_two_state(50.0, left, right), interface=50.0,
        left_state=left, right_state=right,
    )


def _lee_problem() -> ProblemSpec:
    # the source table prints cm^3/g on these columns; they are densities
    left, right = (0.9525, 0.0, 1.0), (3.810, 0.0, 2.0)
    return ProblemSpec(
        name="lee", dim=1, model=MATERIALS["lx17-jwl"],
        x_lo=0.0, x_hi=100.0, t_final=20.0, default_cells=(100,),
        init=_two_state(50.0, left, right), interface=50.0,
        left_state=left, right_state=right,
    )


# quadrant values (rho~, u~, v~, p~); region I is the upper-right quadrant,
# numbered counterclockwise (the source gives the layout only graphically)
_RP2D_REGIONS = {
    "I": (1.0, 0.0, 0.0, 1.0),
    "II": (0.5, 0.0, 1.0, 0.25),
    "III": (0.125, 1.0, 1.0, 0.025),
    "IV": (0.5, 1.0, 0.0, 0.25),
}


def _rp2d_problem() -> ProblemSpec:
    s = RP2D_SCALING
    xc = s.redimensionalize("length", 0.75)

    def init(X, Y):
        rho = np.empty_like(X)
        u = np.empty_like(X)
        v = np.empty_like(X)
        p = np.empty_like(X)
        quadrants = {
            "I": (X >= xc) & (Y >= xc),
            "II": (X < xc) & (Y >= xc),
            "III": (X < xc) & (Y < xc),
            "IV": (X >= xc) & (Y < xc),
        }
        for key, mask in quadrants.items():
            r_, u_, v_, p_ = _RP2D_REGIONS[key]
            rho[mask] = s.redimensionalize("density", r_)
            u[mask] = s.redimensionalize("velocity", u_)
            v[mask] = s.redimensionalize("velocity", v_)
            p[mask] = s.redimensionalize("pressure", p_)
        return rho, u, v, p

    return ProblemSpec(
        name="rp2d", dim=2, model=MATERIALS["pbx9502-jwl"],
        x_lo=0.0, x_hi=s.redimensionalize("length", 1.0),
        y_lo=0.0, y_hi=s.redimensionalize("length", 1.0),
        t_final=s.redimensionalize("time", 0.5),
        default_cells=(400, 400), init=init, scaling=s,
    )


def _shock_bubble_problem() -> ProblemSpec:
    shocked = (4.545, 1.737, 0.0, 4.369)
    ambient = (1.0, 0.0, 0.0, 0.5)
    bubble_rho = 2.0
    cx, cy, r = 50.0, 50.0, 25.0

    def init(X, Y):
        rho = np.full_like(X, ambient[0])
        u = np.full_like(X, ambient[1])
        v = np.full_like(X, ambient[2])
        p = np.full_like(X, ambient[3])
        inside = (X - cx) ** 2 + (Y - cy) ** 2 < r * r
        rho[inside] = bubble_rho
        shocked_mask = X < 5.0
        rho[shocked_mask] = shocked[0]
        u[shocked_mask] = shocked[1]
        v[shocked_mask] = shocked[2]
        p[shocked_mask] = shocked[3]
        return rho, u, v, p

    return ProblemSpec(
        name="shock-bubble", dim=2, model=MATERIALS["tnt-jwl"],
        x_lo=0.0, x_hi=300.0, y_lo=0.0, y_hi=100.0,
        t_final=70.0, default_cells=(1200, 400), init=init,
        snapshot_times=(40.0,),
    )


_REGISTRY = {
    "contact": _contact_problem,
    "shyue": _shyue_problem,
    "lee": _lee_problem,
    "rp2d": _rp2d_problem,
    "shock-bubble": _shock_bubble_problem,
}


def problem_names():
    return sorted(_REGISTRY)


def load_problem(name: str) -> ProblemSpec:
    try:
        factory = _REGISTRY[name]
    except KeyError:
        raise RegistryError(
            f"unknown problem {name!r}; available: {', '.join(problem_names())}"
        ) from None
    return factory()
