"""realgas: Godunov/GRP finite-volume solvers for real-material compressible flow.

The flux machinery approximates a general pressure law p = kappa(rho) e +
chi(rho) by a local stiffened gas at each cell interface, solves the
resulting two-material Riemann / generalized Riemann problems in closed
form, and verifies against an exact general-EOS reference solver.
"""

from .eos import CochranChan, EosModel, Jwl, Polytropic, Stiffened, StiffenedParams
from .riemann import RiemannFan, SideState, sample, solve_star
from .grp import GrpSideData, InterfaceResolution, solve_grp

__version__ = "0.1.0"

__all__ = [
    "CochranChan",
    "EosModel",
    "GrpSideData",
    "InterfaceResolution",
    "Jwl",
    "Polytropic",
    "RiemannFan",
    "SideState",
    "Stiffened",
    "StiffenedParams",
    "sample",
    "solve_grp",
    "solve_star",
    "__version__",
]
