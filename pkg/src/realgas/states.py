"""Plain flow-state containers shared across solver layers."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PrimitiveState:
    """Flow state in (density, velocity, pressure) form."""

    rho: float
    u: float
    p: float


@dataclass(frozen=True)
class ConservedState:
    """Flow state in (rho, rho*u, rho*E) form, E = e + u^2/2."""

    rho: float
    mom: float
    energy: float

    @classmethod
    def from_primitive(cls, prim: PrimitiveState, e: float) -> "ConservedState":
        return cls(prim.rho, prim.rho * prim.u, prim.rho * (e + 0.5 * prim.u * prim.u))
