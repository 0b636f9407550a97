"""Generalized Riemann problem solver for two-material stiffened-gas data.

Given piecewise-linear initial data (limiting states plus slopes on both
sides of an interface), this module produces the interface value U* of the
associated Riemann fan together with the instantaneous time derivatives
(d rho/dt, d u/dt, d p/dt)* at t -> 0+.

Resolution follows the classical direct-Eulerian GRP construction:

* across a rarefaction, characteristic coordinates yield one linear
  relation a (Du/Dt)* + b (Dp/Dt)* = d whose source term d carries the
  initial entropy variation T S' amplified by powers of the sonic expansion
  ratio theta = c*/c;
* across a shock, differentiating the Rankine-Hugoniot function
  u* = u + Phi(p*; p, rho) along the shock trajectory yields the second
  linear relation;
* continuity of u and p (hence of their material derivatives) across the
  contact bridges the two relations; a 2x2 solve and the Euler equations
  then give the Eulerian derivatives;
* the density derivative follows from the entropy evolution (rarefaction
  side) or from differentiating the Hugoniot (shock side).

Left-side shocks and right-side rarefactions are handled by reflecting the
problem (x -> -x, u -> -u) through the same canonical formulas, which keeps
the solver exactly mirror-symmetric.

The entropy slope T S' is measured through whatever EOS the caller
provides (normally the exact material EOS); everything else uses the local
stiffened-gas fits carried by the side states.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .eos import EosModel
from .errors import IterationError
from .riemann import (
    RiemannFan,
    SideState,
    StarBatch,
    sample,
    sample_zero_arrays,
    solve_star,
    solve_star_arrays,
)
from .states import PrimitiveState

__all__ = [
    "GrpSideData",
    "WaveCoeffs",
    "ShockLinearization",
    "InterfaceResolution",
    "entropy_rate_ratio",
    "rarefaction_coeffs",
    "shock_coeffs",
    "solve_contact_bridge",
    "density_time_derivative",
    "solve_grp",
    "solve_grp_arrays",
    "GrpBatch",
]

# degenerate-fan thresholds (see module notes: the shock linearization is
# an ill-conditioned ratio at exactly zero strength, so bit-degenerate data
# is resolved acoustically with theta = 1)
ACOUSTIC_REL_P = 1e-8
ACOUSTIC_REL_U = 1e-8
BRIDGE_SINGULAR = 1e-14


def entropy_rate_ratio(theta: float, mu2: float):
    """Entropy-variation amplification across a curved rarefaction:

        T dS/dx at the fan tail  =  theta^(1/mu2 + 1) * (T dS/dx at the head),

    with theta the sound-speed ratio c*/c and mu2 = (gamma-1)/(gamma+1)."""
    if np.any(np.asarray(theta) <= 0.0):
        raise ValueError("theta must be positive")
    return theta ** (1.0 / mu2 + 1.0)


@dataclass(frozen=True)
class GrpSideData:
    """Limiting state and primitive slopes on one side of the interface.

    ``tds`` is T*S' measured from the slopes via the Gibbs relation
    (TS' = e' - (p/rho^2) rho'); ``psi_s``/``phi_s`` are the slopes of the
    Riemann invariants u +- int(c/rho drho) evaluated with the side's
    stiffened sound speed.
    """

    state: SideState
    drho: float
    du: float
    dp: float
    e_s: float
    tds: float
    psi_s: float
    phi_s: float

    @classmethod
    def make(
        cls,
        state: SideState,
        drho: float,
        du: float,
        dp: float,
        model: Optional[EosModel] = None,
    ) -> "GrpSideData":
        """Build side data from primitive slopes.

        ``model`` selects the EOS used to measure the energy slope (and so
        the entropy variation); when omitted the side's stiffened fit is
        used.  The wave-propagation coefficients always use the fit.
        """
        rho, p = state.rho, state.p
        if model is not None:
            kappa, chi, dkappa, dchi = model.kappa_chi(rho)
            kappa, chi, dkappa, dchi = (float(x) for x in (kappa, chi, dkappa, dchi))
        else:
            g = state.gas.gamma
            kappa, chi, dkappa, dchi = (
                (g - 1.0) * rho,
                -g * state.gas.p_inf,
                g - 1.0,
                0.0,
            )
        e = (p - chi) / kappa
        e_s = (dp - (dkappa * e + dchi) * drho) / kappa
        tds = e_s - (p / rho**2) * drho
        c = state.c
        psi_s = du + dp / (rho * c) + tds / c
        phi_s = du - dp / (rho * c) - tds / c
        return cls(state, float(drho), float(du), float(dp), e_s, tds, psi_s, phi_s)

    def mirrored(self) -> "GrpSideData":
        """Side data of the reflected problem: x -> -x flips the slopes of
        the even quantities (rho, p) and preserves du (slope of -u in -x)."""
        return GrpSideData(
            state=self.state.mirrored(),
            drho=-self.drho,
            du=self.du,
            dp=-self.dp,
            e_s=-self.e_s,
            tds=-self.tds,
            psi_s=self.phi_s,
            phi_s=self.psi_s,
        )


@dataclass(frozen=True)
class WaveCoeffs:
    """Coefficients of one side's linear relation a (Du/Dt)* + b (Dp/Dt)* = d."""

    a: float
    b: float
    d: float


@dataclass(frozen=True)
class ShockLinearization:
    """Closed-form ingredients of the shock-side relation (canonical
    right-facing orientation): the mass-flux kernel Lambda, the velocity
    jump function Phi = (p* - p) Lambda^(1/2) and its partials, the slope
    weights L_*, and the Hugoniot partials H1..H4 used by the density
    derivative."""

    sigma: float
    Lambda: float
    Phi: float
    dPhi_dpstar: float
    dPhi_dp: float
    dPhi_drho: float
    L_p: float
    L_u: float
    L_rho: float
    H1: float
    H2: float
    H3: float
    H4: float


@dataclass(frozen=True)
class InterfaceResolution:
    """GRP output at the interface ray x/t = 0.

    ``state`` is the associated-Riemann-fan value R^A(0) with its material
    tag; the Eulerian derivatives satisfy the conversion identities

        du_dt = Du_Dt + (u*/(rho* c*^2)) Dp_Dt,
        dp_dt = Dp_Dt + rho* u* Du_Dt,

    exactly as stored on the bridge path (to rounding on the sonic path,
    where the pair is rank-deficient).  ``theta`` is the rarefaction
    expansion ratio used by the resolution (1.0 when none was involved).
    """

    state: PrimitiveState
    material: str
    Du_Dt: float
    Dp_Dt: float
    du_dt: float
    dp_dt: float
    drho_dt: float
    theta: float = 1.0


# ---------------------------------------------------------------------------
# canonical vectorized coefficient kernels
# ---------------------------------------------------------------------------


def _raref_coeffs_np(c, rho, dp, du, tds, mu2, rho_tail, c_tail):
    """Left-facing rarefaction relation evaluated where the sound speed is
    c_tail (the fan tail for the subsonic case, an interior ray when sonic)."""
    th = c_tail / c
    psi_s = du + dp / (rho * c) + tds / c
    t_half = th ** (1.0 / (2.0 * mu2))
    t_ent = th ** ((1.0 + mu2) / mu2)
    bracket = (1.0 + mu2) / (1.0 + 2.0 * mu2) * t_half + mu2 / (1.0 + 2.0 * mu2) * t_ent
    a = np.ones_like(c)
    b = 1.0 / (rho_tail * c_tail)
    d = bracket * tds - c * t_half * psi_s
    return a, b, d


def _shock_geometry_np(pstar, p, rho, mu2, pi):
    """Lambda, sqrt(Lambda), the denominator D, and the Phi partials for a
    canonical right-facing shock."""
    D = pstar + mu2 * p + (1.0 + mu2) * pi
    Lam = (1.0 - mu2) / (rho * D)
    sq = np.sqrt(Lam)
    dps = 0.5 * sq * (pstar + (1.0 + 2.0 * mu2) * p + 2.0 * (1.0 + mu2) * pi) / D
    dp = -0.5 * sq * ((2.0 + mu2) * pstar + mu2 * p + 2.0 * (1.0 + mu2) * pi) / D
    drho = -(pstar - p) * sq / (2.0 * rho)
    return Lam, sq, D, dps, dp, drho


def _shock_coeffs_np(pstar, ustar, sigma, rho, u, p, c, mu2, pi,
                     drho_s, du_s, dp_s, rho_star, c_star):
    """Right-facing shock relation from differentiation along the shock path."""
    _, _, _, dps, dpp, dpr = _shock_geometry_np(pstar, p, rho, mu2, pi)
    a = 1.0 + rho_star * (sigma - ustar) * dps
    b = -((sigma - ustar) / (rho_star * c_star**2) + dps)
    L_p = -1.0 / rho + (sigma - u) * dpp
    L_u = (sigma - u) - rho * c**2 * dpp - rho * dpr
    L_rho = (sigma - u) * dpr
    d = L_p * dp_s + L_u * du_s + L_rho * drho_s
    return a, b, d


def _hugoniot_partials_np(pstar, p, rho_star, rho, mu2, pi):
    """Partials H1..H4 of the stiffened Hugoniot function

        G(rho*, p*; p, rho) = e(rho*, p*) - e(rho, p)
                              + (1/rho - 1/rho*) (p + p*)/2

    with respect to (rho*, p*, rho, p); obtained by direct differentiation."""
    H1 = -0.5 * (pstar / mu2 + p + (1.0 + mu2) / mu2 * pi) / rho_star**2
    H2 = 0.5 * (1.0 / (rho_star * mu2) - 1.0 / rho)
    H3 = 0.5 * (p / mu2 + pstar + (1.0 + mu2) / mu2 * pi) / rho**2
    H4 = -0.5 * (1.0 / (rho * mu2) - 1.0 / rho_star)
    return H1, H2, H3, H4


def _shock_drho_dt_np(pstar, ustar, sigma, rho, u, p, c, mu2, pi,
                      drho_s, du_s, dp_s, rho_star, c_star, DuDt, DpDt):
    """Density time derivative behind a canonical right-facing shock."""
    H1, H2, H3, H4 = _hugoniot_partials_np(pstar, p, rho_star, rho, mu2, pi)
    rhs = ustar * (
        (u - sigma) * H3 * drho_s
        + (rho * H3 + rho * c**2 * H4) * du_s
        + (u - sigma) * H4 * dp_s
    )
    num = rhs - (sigma / c_star**2 * H1 + ustar * H2) * DpDt \
        - H2 * (ustar - sigma) * rho_star * ustar * DuDt
    return num / ((ustar - sigma) * H1)


def _raref_drho_dt_np(dp_dt, g, rho_star, ustar, tds, theta, mu2, c_star):
    """Density time derivative on a rarefaction side: the pressure part via
    c^2 plus the advected entropy variation amplified across the fan.  The
    form is even under reflection, so it serves both orientations."""
    ent = tds * theta ** (1.0 + 1.0 / mu2)
    return (dp_dt + (g - 1.0) * rho_star * ustar * ent) / c_star**2


# ---------------------------------------------------------------------------
# batched solver
# ---------------------------------------------------------------------------


@dataclass
class GrpBatch:
    """Struct-of-arrays GRP output (one lane per interface)."""

    star: StarBatch
    rho0: np.ndarray
    u0: np.ndarray
    p0: np.ndarray
    from_left: np.ndarray
    gamma0: np.ndarray
    pi0: np.ndarray
    du_dt: np.ndarray
    dp_dt: np.ndarray
    drho_dt: np.ndarray
    Du_Dt: np.ndarray
    Dp_Dt: np.ndarray
    theta: np.ndarray


def solve_grp_arrays(
    rho_l, u_l, p_l, g_l, pi_l, drho_l, du_l, dp_l, tds_l,
    rho_r, u_r, p_r, g_r, pi_r, drho_r, du_r, dp_r, tds_r,
) -> GrpBatch:
    """Vectorized GRP resolution.

    Slopes are primitive-variable x-derivatives at the interface; ``tds``
    lanes carry the pre-measured entropy slopes T S' (see
    :meth:`GrpSideData.make`).
    """
    arrs = [np.atleast_1d(np.asarray(a, dtype=float)) for a in (
        rho_l, u_l, p_l, g_l, pi_l, drho_l, du_l, dp_l, tds_l,
        rho_r, u_r, p_r, g_r, pi_r, drho_r, du_r, dp_r, tds_r)]
    (rho_l, u_l, p_l, g_l, pi_l, drho_l, du_l, dp_l, tds_l,
     rho_r, u_r, p_r, g_r, pi_r, drho_r, du_r, dp_r, tds_r) = np.broadcast_arrays(*arrs)

    b = solve_star_arrays(rho_l, u_l, p_l, g_l, pi_l, rho_r, u_r, p_r, g_r, pi_r)
    rho0, u0, p0, from_left, gamma0, pi0 = sample_zero_arrays(b)

    mu2_l = (g_l - 1.0) / (g_l + 1.0)
    mu2_r = (g_r - 1.0) / (g_r + 1.0)
    c_l, c_r = b.c_l, b.c_r

    acoustic = (np.abs(p_l - p_r) <= ACOUSTIC_REL_P * (p_l + pi_l)) & (
        np.abs(u_l - u_r) <= ACOUSTIC_REL_U * np.maximum(c_l, c_r)
    )
    lw_left = ~acoustic & (b.head_l >= 0.0)
    lw_right = ~acoustic & ~lw_left & (b.head_r <= 0.0)
    sonic_l = (~acoustic & ~lw_left & ~lw_right
               & ~b.left_shock & (b.head_l < 0.0) & (b.tail_l > 0.0))
    sonic_r = (~acoustic & ~lw_left & ~lw_right & ~sonic_l
               & ~b.right_shock & (b.head_r > 0.0) & (b.tail_r < 0.0))
    bridge = ~(lw_left | lw_right | sonic_l | sonic_r)

    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        # ---- bridge path: one relation per side, solved at the contact ----
        # left side: canonical rarefaction, or reflected canonical shock
        aL_r, bL_r, dL_r = _raref_coeffs_np(
            c_l, rho_l, dp_l, du_l, tds_l, mu2_l, b.rho_sl, b.c_sl)
        aL_s, bL_sm, dL_sm = _shock_coeffs_np(
            b.pstar, -b.ustar, -b.head_l, rho_l, -u_l, p_l, c_l, mu2_l, pi_l,
            -drho_l, du_l, -dp_l, b.rho_sl, b.c_sl)
        a_L = np.where(b.left_shock, aL_s, aL_r)
        b_L = np.where(b.left_shock, -bL_sm, bL_r)
        d_L = np.where(b.left_shock, -dL_sm, dL_r)
        # acoustic lanes fall back to the zero-strength relation (theta = 1)
        th1 = np.ones_like(c_l)
        aL_a, bL_a, dL_a = _raref_coeffs_np(
            c_l, rho_l, dp_l, du_l, tds_l, mu2_l, rho_l, c_l)
        a_L = np.where(acoustic, aL_a, a_L)
        b_L = np.where(acoustic, bL_a, b_L)
        d_L = np.where(acoustic, dL_a, d_L)

        # right side: canonical shock, or reflected canonical rarefaction
        aR_s, bR_s, dR_s = _shock_coeffs_np(
            b.pstar, b.ustar, b.head_r, rho_r, u_r, p_r, c_r, mu2_r, pi_r,
            drho_r, du_r, dp_r, b.rho_sr, b.c_sr)
        aR_rm, bR_rm, dR_rm = _raref_coeffs_np(
            c_r, rho_r, -dp_r, du_r, -tds_r, mu2_r, b.rho_sr, b.c_sr)
        a_R = np.where(b.right_shock, aR_s, aR_rm)
        b_R = np.where(b.right_shock, bR_s, -bR_rm)
        d_R = np.where(b.right_shock, dR_s, -dR_rm)
        aR_a, bR_a, dR_a = _raref_coeffs_np(
            c_r, rho_r, -dp_r, du_r, -tds_r, mu2_r, rho_r, c_r)
        a_R = np.where(acoustic, aR_a, a_R)
        b_R = np.where(acoustic, -bR_a, b_R)
        d_R = np.where(acoustic, -dR_a, d_R)

        det = a_L * b_R - a_R * b_L
        degenerate = bridge & (
            np.abs(det) < BRIDGE_SINGULAR * (np.abs(a_L * b_R) + np.abs(a_R * b_L))
        )
        if np.any(degenerate):
            # fall back to the acoustic relations on those lanes
            a_L = np.where(degenerate, aL_a, a_L)
            b_L = np.where(degenerate, bL_a, b_L)
            d_L = np.where(degenerate, dL_a, d_L)
            a_R = np.where(degenerate, aR_a, a_R)
            b_R = np.where(degenerate, -bR_a, b_R)
            d_R = np.where(degenerate, -dR_a, d_R)
            det = a_L * b_R - a_R * b_L

        DuDt = (d_L * b_R - d_R * b_L) / det
        DpDt = (a_L * d_R - a_R * d_L) / det

        # a contact sitting exactly on the ray (u* = 0) has no geometric
        # upwind side; picking by the sign of (Du/Dt)* - the side the
        # contact accelerates away from - keeps mirrored problems making
        # mirrored choices (a fixed pick would seed asymmetry in symmetric
        # 2-D flows).  u and p outputs are side-independent there.
        tie = b.ustar == 0.0
        if np.any(tie):
            from_left = np.where(
                tie, np.where(DuDt != 0.0, DuDt > 0.0, from_left), from_left)
            rho0 = np.where(tie, np.where(from_left, b.rho_sl, b.rho_sr), rho0)
            gamma0 = np.where(tie, np.where(from_left, g_l, g_r), gamma0)
            pi0 = np.where(tie, np.where(from_left, pi_l, pi_r), pi0)

        rho_own = np.where(from_left, b.rho_sl, b.rho_sr)
        c_own = np.where(from_left, b.c_sl, b.c_sr)
        du_dt = DuDt + b.ustar / (rho_own * c_own**2) * DpDt
        dp_dt = DpDt + rho_own * b.ustar * DuDt

        # density derivative on the side owning the ray
        th_l = b.c_sl / c_l
        th_r = b.c_sr / c_r
        drho_raref_l = _raref_drho_dt_np(
            dp_dt, g_l, b.rho_sl, b.ustar, tds_l, th_l, mu2_l, b.c_sl)
        drho_raref_r = _raref_drho_dt_np(
            dp_dt, g_r, b.rho_sr, b.ustar, tds_r, th_r, mu2_r, b.c_sr)
        drho_shock_l = _shock_drho_dt_np(
            b.pstar, -b.ustar, -b.head_l, rho_l, -u_l, p_l, c_l, mu2_l, pi_l,
            -drho_l, du_l, -dp_l, b.rho_sl, b.c_sl, -DuDt, DpDt)
        drho_shock_r = _shock_drho_dt_np(
            b.pstar, b.ustar, b.head_r, rho_r, u_r, p_r, c_r, mu2_r, pi_r,
            drho_r, du_r, dp_r, b.rho_sr, b.c_sr, DuDt, DpDt)
        drho_acoustic_l = _raref_drho_dt_np(
            dp_dt, g_l, rho_l, b.ustar, tds_l, th1, mu2_l, c_l)
        drho_acoustic_r = _raref_drho_dt_np(
            dp_dt, g_r, rho_r, b.ustar, tds_r, th1, mu2_r, c_r)
        drho_dt = np.where(
            from_left,
            np.where(b.left_shock, drho_shock_l, drho_raref_l),
            np.where(b.right_shock, drho_shock_r, drho_raref_r),
        )
        acoustic_eff = acoustic | degenerate
        drho_dt = np.where(
            acoustic_eff,
            np.where(from_left, drho_acoustic_l, drho_acoustic_r),
            drho_dt,
        )
        theta = np.where(
            from_left,
            np.where(b.left_shock, 1.0, th_l),
            np.where(b.right_shock, 1.0, th_r),
        )
        theta = np.where(acoustic_eff, 1.0, theta)

        # ---- supersonic lanes: smooth one-sided (Lax-Wendroff) values ----
        for mask, rho_d, u_d, p_d, g_d, pi_d, drho_d, du_d, dp_d in (
            (lw_left, rho_l, u_l, p_l, g_l, pi_l, drho_l, du_l, dp_l),
            (lw_right, rho_r, u_r, p_r, g_r, pi_r, drho_r, du_r, dp_r),
        ):
            if not np.any(mask):
                continue
            c2 = g_d * (p_d + pi_d) / rho_d
            DuDt_d = -dp_d / rho_d
            DpDt_d = -rho_d * c2 * du_d
            DuDt = np.where(mask, DuDt_d, DuDt)
            DpDt = np.where(mask, DpDt_d, DpDt)
            du_dt = np.where(mask, DuDt_d + u_d / (rho_d * c2) * DpDt_d, du_dt)
            dp_dt = np.where(mask, DpDt_d + rho_d * u_d * DuDt_d, dp_dt)
            drho_dt = np.where(mask, -(u_d * drho_d + rho_d * du_d), drho_dt)
            theta = np.where(mask, 1.0, theta)

        # ---- sonic lanes: resolve on the interior ray of the fan ----
        if np.any(sonic_l):
            th0 = np.where(sonic_l, np.abs(u0) / c_l, 1.0)
            _, _, d0 = _raref_coeffs_np(
                c_l, rho_l, dp_l, du_l, tds_l, mu2_l, rho0, np.abs(u0))
            dudt0 = d0
            dpdt0 = rho0 * np.abs(u0) * d0
            drdt0 = _raref_drho_dt_np(
                dpdt0, g_l, rho0, u0, tds_l, th0, mu2_l, np.abs(u0))
            du_dt = np.where(sonic_l, dudt0, du_dt)
            dp_dt = np.where(sonic_l, dpdt0, dp_dt)
            drho_dt = np.where(sonic_l, drdt0, drho_dt)
            DuDt = np.where(sonic_l, 0.5 * dudt0, DuDt)
            DpDt = np.where(sonic_l, 0.5 * dpdt0, DpDt)
            theta = np.where(sonic_l, th0, theta)
        if np.any(sonic_r):
            th0 = np.where(sonic_r, np.abs(u0) / c_r, 1.0)
            _, _, d0m = _raref_coeffs_np(
                c_r, rho_r, -dp_r, du_r, -tds_r, mu2_r, rho0, np.abs(u0))
            dudt0 = -d0m
            dpdt0 = rho0 * np.abs(u0) * d0m
            drdt0 = _raref_drho_dt_np(
                dpdt0, g_r, rho0, u0, tds_r, th0, mu2_r, np.abs(u0))
            du_dt = np.where(sonic_r, dudt0, du_dt)
            dp_dt = np.where(sonic_r, dpdt0, dp_dt)
            drho_dt = np.where(sonic_r, drdt0, drho_dt)
            DuDt = np.where(sonic_r, 0.5 * dudt0, DuDt)
            DpDt = np.where(sonic_r, 0.5 * dpdt0, DpDt)
            theta = np.where(sonic_r, th0, theta)

    return GrpBatch(
        star=b, rho0=rho0, u0=u0, p0=p0, from_left=from_left,
        gamma0=gamma0, pi0=pi0,
        du_dt=du_dt, dp_dt=dp_dt, drho_dt=drho_dt,
        Du_Dt=DuDt, Dp_Dt=DpDt, theta=theta,
    )


# ---------------------------------------------------------------------------
# scalar operations
# ---------------------------------------------------------------------------


def _which_side(side: GrpSideData, fan: RiemannFan) -> str:
    if side.state is fan.left or (side.state.rho, side.state.u, side.state.p) == (
        fan.left.rho, fan.left.u, fan.left.p):
        return "left"
    return "right"


def rarefaction_coeffs(side: GrpSideData, fan: RiemannFan, which: Optional[str] = None,
                       theta: Optional[float] = None) -> WaveCoeffs:
    """Wave relation for a rarefaction side of the fan, evaluated at the fan
    tail (or at the interior sound-speed ratio ``theta`` when given)."""
    which = which or _which_side(side, fan)
    if which == "left":
        if fan.left_wave.is_shock:
            raise ValueError("left wave is a shock; rarefaction_coeffs does not apply")
        s = side.state
        mu2 = s.gas.mu2
        c_tail = fan.c_star_l if theta is None else theta * s.c
        rho_tail = fan.rho_star_l if theta is None else s.rho * (c_tail / s.c) ** (2.0 / (s.gas.gamma - 1.0))
        a, b, d = _raref_coeffs_np(
            s.c, s.rho, side.dp, side.du, side.tds, mu2,
            rho_tail, c_tail)
        return WaveCoeffs(float(a), float(b), float(d))
    if fan.right_wave.is_shock:
        raise ValueError("right wave is a shock; rarefaction_coeffs does not apply")
    mirrored = rarefaction_coeffs(side.mirrored(), fan.mirrored(), "left", theta)
    return WaveCoeffs(mirrored.a, -mirrored.b, -mirrored.d)


def shock_coeffs(side: GrpSideData, fan: RiemannFan, which: Optional[str] = None):
    """Wave relation and full linearization for a shock side of the fan."""
    which = which or _which_side(side, fan)
    if which == "right":
        if not fan.right_wave.is_shock:
            raise ValueError("right wave is a rarefaction; shock_coeffs does not apply")
        s = side.state
        mu2 = s.gas.mu2
        sigma = fan.right_wave.sigma
        lam, _, _, dps, dpp, dpr = _shock_geometry_np(
            fan.pstar, s.p, s.rho, mu2, s.gas.p_inf)
        if not lam > 0.0:
            raise IterationError("non-positive Lambda in shock linearization")
        a, bb, d = _shock_coeffs_np(
            fan.pstar, fan.ustar, sigma, s.rho, s.u, s.p, s.c, mu2, s.gas.p_inf,
            side.drho, side.du, side.dp, fan.rho_star_r, fan.c_star_r)
        H1, H2, H3, H4 = _hugoniot_partials_np(
            fan.pstar, s.p, fan.rho_star_r, s.rho, mu2, s.gas.p_inf)
        L_p = -1.0 / s.rho + (sigma - s.u) * dpp
        L_u = (sigma - s.u) - s.rho * s.c**2 * dpp - s.rho * dpr
        L_rho = (sigma - s.u) * dpr
        lin = ShockLinearization(
            sigma=float(sigma), Lambda=float(lam),
            Phi=float((fan.pstar - s.p) * np.sqrt(lam)),
            dPhi_dpstar=float(dps), dPhi_dp=float(dpp), dPhi_drho=float(dpr),
            L_p=float(L_p), L_u=float(L_u), L_rho=float(L_rho),
            H1=float(H1), H2=float(H2), H3=float(H3), H4=float(H4),
        )
        return WaveCoeffs(float(a), float(bb), float(d)), lin
    if not fan.left_wave.is_shock:
        raise ValueError("left wave is a rarefaction; shock_coeffs does not apply")
    coeffs_m, lin_m = shock_coeffs(side.mirrored(), fan.mirrored(), "right")
    lin = ShockLinearization(
        sigma=-lin_m.sigma, Lambda=lin_m.Lambda, Phi=lin_m.Phi,
        dPhi_dpstar=lin_m.dPhi_dpstar, dPhi_dp=lin_m.dPhi_dp,
        dPhi_drho=lin_m.dPhi_drho,
        L_p=lin_m.L_p, L_u=lin_m.L_u, L_rho=lin_m.L_rho,
        H1=lin_m.H1, H2=lin_m.H2, H3=lin_m.H3, H4=lin_m.H4,
    )
    return WaveCoeffs(coeffs_m.a, -coeffs_m.b, -coeffs_m.d), lin


def solve_contact_bridge(left: WaveCoeffs, right: WaveCoeffs, fan: RiemannFan) -> InterfaceResolution:
    """Solve the 2x2 bridge system for the material derivatives and convert
    to Eulerian time derivatives at the interface ray (density part left to
    :func:`density_time_derivative`)."""
    det = left.a * right.b - right.a * left.b
    if abs(det) < BRIDGE_SINGULAR * (abs(left.a * right.b) + abs(right.a * left.b)):
        raise IterationError("degenerate contact bridge (use the acoustic resolution)")
    DuDt = (left.d * right.b - right.d * left.b) / det
    DpDt = (left.a * right.d - right.a * left.d) / det
    state, material = sample(fan, 0.0)
    if fan.ustar >= 0.0:
        rho_s, c_s = fan.rho_star_l, fan.c_star_l
    else:
        rho_s, c_s = fan.rho_star_r, fan.c_star_r
    du_dt = DuDt + fan.ustar / (rho_s * c_s**2) * DpDt
    dp_dt = DpDt + rho_s * fan.ustar * DuDt
    return InterfaceResolution(
        state=state, material=material,
        Du_Dt=float(DuDt), Dp_Dt=float(DpDt),
        du_dt=float(du_dt), dp_dt=float(dp_dt), drho_dt=float("nan"),
    )


def density_time_derivative(resolution: InterfaceResolution, fan: RiemannFan,
                            left: GrpSideData, right: GrpSideData) -> float:
    """Density time derivative at the interface, from the wave on the side
    that owns the ray: entropy transport through a rarefaction, Hugoniot
    differentiation behind a shock (u* = 0 uses the rarefaction form, which
    degenerates to dp_dt / c*^2)."""
    ustar = fan.ustar
    if ustar >= 0.0:
        s = left.state
        mu2 = s.gas.mu2
        if fan.left_wave.is_shock and ustar > 0.0:
            val = _shock_drho_dt_np(
                fan.pstar, -ustar, -fan.left_wave.sigma, s.rho, -s.u, s.p, s.c,
                mu2, s.gas.p_inf, -left.drho, left.du, -left.dp,
                fan.rho_star_l, fan.c_star_l, -resolution.Du_Dt, resolution.Dp_Dt)
        else:
            theta = fan.c_star_l / s.c if not fan.left_wave.is_shock else 1.0
            val = _raref_drho_dt_np(
                resolution.dp_dt, s.gas.gamma, fan.rho_star_l, ustar,
                left.tds, theta, mu2, fan.c_star_l)
        return float(val)
    s = right.state
    mu2 = s.gas.mu2
    if fan.right_wave.is_shock:
        H1 = _hugoniot_partials_np(fan.pstar, s.p, fan.rho_star_r, s.rho, mu2, s.gas.p_inf)[0]
        if H1 == 0.0:
            raise IterationError("degenerate Hugoniot partial H1 = 0")
        val = _shock_drho_dt_np(
            fan.pstar, ustar, fan.right_wave.sigma, s.rho, s.u, s.p, s.c,
            mu2, s.gas.p_inf, right.drho, right.du, right.dp,
            fan.rho_star_r, fan.c_star_r, resolution.Du_Dt, resolution.Dp_Dt)
    else:
        theta = fan.c_star_r / s.c
        val = _raref_drho_dt_np(
            resolution.dp_dt, s.gas.gamma, fan.rho_star_r, ustar,
            right.tds, theta, mu2, fan.c_star_r)
    return float(val)


def solve_grp(left: GrpSideData, right: GrpSideData) -> InterfaceResolution:
    """Full GRP resolution for one interface (scalar wrapper over the
    vectorized kernel, so batched and scalar paths cannot drift apart)."""
    g = solve_grp_arrays(
        left.state.rho, left.state.u, left.state.p,
        left.state.gas.gamma, left.state.gas.p_inf,
        left.drho, left.du, left.dp, left.tds,
        right.state.rho, right.state.u, right.state.p,
        right.state.gas.gamma, right.state.gas.p_inf,
        right.drho, right.du, right.dp, right.tds,
    )
    return InterfaceResolution(
        state=PrimitiveState(float(g.rho0[0]), float(g.u0[0]), float(g.p0[0])),
        material="left" if bool(g.from_left[0]) else "right",
        Du_Dt=float(g.Du_Dt[0]),
        Dp_Dt=float(g.Dp_Dt[0]),
        du_dt=float(g.du_dt[0]),
        dp_dt=float(g.dp_dt[0]),
        drho_dt=float(g.drho_dt[0]),
        theta=float(g.theta[0]),
    )
