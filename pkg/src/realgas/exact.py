"""Exact Riemann solver for general convex EOS of the kappa/chi family.

This is the correctness-first reference the flux solvers are verified
against.  Nothing here assumes a stiffened gas:

* rarefaction curves are integrated as ODEs in pressure,

      d rho / dp = 1 / c^2(rho, p),      d u / dp = -+ 1 / (rho c),

  (upper sign: left-facing wave) with an adaptive embedded Runge-Kutta
  (scipy's RK45) at rtol 1e-10 and dense output;
* shock curves solve the Hugoniot

      e(rho*, p*) - e(rho, p) + (1/rho* - 1/rho) (p* + p)/2 = 0

  for rho* by safeguarded Newton with the internal energy eliminated
  through the EOS, and recover u* from the mass-flux jump relation
  [rho u]^2 = [rho][rho u^2 + p];
* the star pressure is the root of the velocity-match residual, found by a
  bracketed secant iteration at rtol 1e-10.

Deliberately slow: every evaluation makes many EOS calls; the per-side
wave curves are cached across the iteration so a full solve costs two ODE
integrations plus cheap root finding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .eos import EosModel
from .errors import ConvexityError, IterationError, VacuumError
from .states import PrimitiveState

__all__ = [
    "WaveCurvePoint",
    "ExactSolution",
    "integrate_isentrope",
    "hugoniot_state",
    "solve_exact",
]

# contract precision is 1e-10 relative (ODE and star iteration); both run a
# decade tighter so Hugoniot/isentrope amplification cannot eat the guarantee
ODE_RTOL = 1e-11
ODE_ATOL = 1e-15
STAR_RTOL = 1e-11
HUGONIOT_RTOL = 1e-12
VACUUM_DENSITY_FRACTION = 1e-12
FAN_SAMPLES = 512


@dataclass(frozen=True)
class WaveCurvePoint:
    """State reached along a wave curve from a given side state."""

    p: float
    rho: float
    e: float
    u: float


class _RarefactionCurve:
    """One side's rarefaction curve, integrated once and reused.

    The ODE runs from the side pressure down toward vacuum, stopping where
    the sound speed or the density degenerates; ``state_at`` evaluates the
    dense output, ``refine_at`` re-integrates exactly to a target pressure
    for final answers.
    """

    def __init__(self, rho: float, u: float, p: float, model: EosModel, sign: float):
        self.rho0, self.u0, self.p0 = rho, u, p
        self.model = model
        self.sign = sign  # -1 for a left-facing wave, +1 for right-facing
        self._sol = None
        self._depth = p  # lowest pressure integrated so far
        self._exhausted = False  # hit vacuum/degeneracy before the target

    def _rhs(self, p_, y):
        rho_, _ = y
        c2 = float(self.model.sound_speed_sq(rho_, p_))
        c = math.sqrt(c2)
        return [1.0 / c2, self.sign / (rho_ * c)]

    def _ensure(self, p_target: float):
        """Integrate (lazily, from scratch) down to p_target if needed."""
        if self._sol is not None and (self._depth <= p_target or self._exhausted):
            return
        c2_0 = float(self.model.sound_speed_sq(self.rho0, self.p0))

        def degenerate(p_, y):
            rho_ = y[0]
            if rho_ <= VACUUM_DENSITY_FRACTION * self.rho0:
                return 0.0
            try:
                c2 = float(self.model.sound_speed_sq(rho_, p_))
            except Exception:
                return 0.0
            return c2 - 1e-12 * c2_0

        degenerate.terminal = True
        stop = max(p_target, 1e-14 * self.p0)
        self._sol = solve_ivp(
            self._rhs, (self.p0, stop), [self.rho0, self.u0], method="RK45",
            rtol=ODE_RTOL, atol=ODE_ATOL, dense_output=True, events=degenerate,
        )
        self._depth = float(self._sol.t[-1])
        self._exhausted = bool(self._sol.t_events[0].size) or self._sol.status == 1

    @property
    def p_min(self) -> float:
        return self._depth

    def state_at(self, p: float) -> WaveCurvePoint:
        if p > self.p0:
            raise ValueError("rarefaction curve is only defined for p <= p_side")
        self._ensure(p)
        if p < self._depth:
            raise VacuumError(
                f"rarefaction curve reaches vacuum/degeneracy at p = {self._depth}"
            )
        rho, u = (float(v) for v in self._sol.sol(p))
        return WaveCurvePoint(p, rho, float(self.model.internal_energy(rho, p)), u)

    def refine_at(self, p: float) -> WaveCurvePoint:
        """Exact endpoint integration (fresh solve) for final star values."""
        if p > self.p0:
            raise ValueError("rarefaction curve is only defined for p <= p_side")
        sol = solve_ivp(self._rhs, (self.p0, p), [self.rho0, self.u0], method="RK45",
                        rtol=ODE_RTOL, atol=ODE_ATOL)
        if not sol.success:
            raise IterationError(f"isentrope refinement failed: {sol.message}")
        rho, u = float(sol.y[0, -1]), float(sol.y[1, -1])
        return WaveCurvePoint(p, rho, float(self.model.internal_energy(rho, p)), u)


def integrate_isentrope(rho: float, u: float, p: float, p_target: float,
                        model: EosModel, family: str = "left") -> WaveCurvePoint:
    """Integrate the rarefaction ODE from (rho, u, p) down to p_target.

    ``family`` selects the characteristic family ("left": du/dp = -1/(rho c),
    "right": +).  Raises :class:`VacuumError` if the curve degenerates before
    p_target and :class:`ConvexityError` if c^2 fails at the start state.
    """
    if p_target > p:
        raise ValueError("p_target must not exceed the side pressure")
    if float(model.sound_speed_sq(rho, p)) <= 0.0:
        raise ConvexityError(f"c^2 <= 0 at the initial state (rho={rho}, p={p})")
    sign = -1.0 if family == "left" else +1.0
    curve = _RarefactionCurve(rho, u, p, model, sign)
    curve._ensure(p_target)
    if p_target < curve.p_min:
        raise VacuumError(
            f"isentrope degenerates at p = {curve.p_min} before reaching {p_target}"
        )
    return curve.refine_at(p_target)


def hugoniot_state(rho: float, u: float, p: float, pstar: float,
                   model: EosModel, family: str = "left") -> WaveCurvePoint:
    """Post-shock state on the Hugoniot through (rho, u, p) at pressure pstar.

    rho* is the root of the Hugoniot function on (rho, 50 rho]; u* follows
    from the mass-flux relation with the sign of the selected family.
    """
    if pstar <= p:
        raise ValueError("shock branch requires pstar > p_side")
    e0 = float(model.internal_energy(rho, p))
    tau0 = 1.0 / rho

    def hug(rho_s):
        e_s = float(model.internal_energy(rho_s, pstar))
        return e_s - e0 + (1.0 / rho_s - tau0) * 0.5 * (pstar + p)

    # hug(rho) = (pstar - p)/kappa > 0 exactly, so rho itself is always a
    # valid lower bracket (the root sits arbitrarily close for weak shocks)
    lo = rho
    hi = rho * 1.05
    f_lo = hug(lo)
    f_hi = hug(hi)
    while f_lo * f_hi > 0.0:
        hi *= 1.6
        if hi > 50.0 * rho:
            raise IterationError(
                f"no Hugoniot root in (rho, 50 rho] for pstar = {pstar}"
            )
        f_hi = hug(hi)
    rho_s = brentq(hug, lo, hi, rtol=HUGONIOT_RTOL)
    tau_diff = tau0 - 1.0 / rho_s
    if tau_diff < 0.0:
        raise IterationError("non-compressive Hugoniot root")
    du = math.sqrt((pstar - p) * tau_diff)
    u_s = u - du if family == "left" else u + du
    return WaveCurvePoint(pstar, rho_s, float(model.internal_energy(rho_s, pstar)), u_s)


@dataclass
class ExactSolution:
    """Star state plus a self-similar sampler for the general-EOS problem."""

    left: PrimitiveState
    right: PrimitiveState
    model_left: EosModel
    model_right: EosModel
    pstar: float
    ustar: float
    rho_star_l: float
    rho_star_r: float
    left_is_shock: bool
    right_is_shock: bool
    speeds_left: tuple
    speeds_right: tuple
    iterations: int
    _sampler: Callable

    def sample(self, xi: float):
        """State on the ray x/t = xi as (PrimitiveState, material tag)."""
        return self._sampler(xi)

    def sample_profile(self, xis):
        """Vectorized sampling; returns (rho, u, p, e) arrays."""
        rho = np.empty(len(xis))
        u = np.empty(len(xis))
        p = np.empty(len(xis))
        e = np.empty(len(xis))
        for i, xi in enumerate(xis):
            st, tag = self._sampler(float(xi))
            rho[i], u[i], p[i] = st.rho, st.u, st.p
            model = self.model_left if tag == "left" else self.model_right
            e[i] = float(model.internal_energy(st.rho, st.p))
        return rho, u, p, e


def _sound_speed(model, rho, p):
    return float(model.sound_speed(rho, p))


def solve_exact(left: PrimitiveState, right: PrimitiveState,
                model_left: EosModel, model_right: Optional[EosModel] = None,
                ) -> ExactSolution:
    """Solve the Riemann problem with the exact (un-approximated) EOS.

    A single material is the normal configuration; a second model may be
    supplied for two-material reference runs.  Equal (u, p) short-circuits
    to the trivial contact.
    """
    model_right = model_right or model_left
    rl, ul, pl = left.rho, left.u, left.p
    rr, ur, pr = right.rho, right.u, right.p

    trivial = ul == ur and pl == pr
    curves = {}

    def u_left(p):
        """Star velocity reached from the left along its wave curve."""
        if p <= pl:
            if "L" not in curves:
                curves["L"] = _RarefactionCurve(rl, ul, pl, model_left, sign=-1.0)
            return curves["L"].state_at(p).u
        return hugoniot_state(rl, ul, pl, p, model_left, "left").u

    def u_right(p):
        if p <= pr:
            if "R" not in curves:
                curves["R"] = _RarefactionCurve(rr, ur, pr, model_right, sign=+1.0)
            return curves["R"].state_at(p).u
        return hugoniot_state(rr, ur, pr, p, model_right, "right").u

    iterations = 0
    if trivial:
        pstar, ustar = pl, ul
    else:
        def residual(p):
            return u_left(p) - u_right(p)

        # starting pair (0.9 min, 1.1 max), expanded geometrically until the
        # residual changes sign across it
        p_lo = 0.9 * min(pl, pr)
        p_hi = 1.1 * max(pl, pr)
        floor = 1e-10 * min(pl, pr)
        for _ in range(200):
            if residual(p_hi) < 0.0:
                break
            p_hi *= 1.8
        else:
            raise IterationError("failed to bracket the star pressure from above")
        while True:
            try:
                if residual(p_lo) > 0.0:
                    break
            except VacuumError as exc:
                raise VacuumError(f"vacuum Riemann problem: {exc}") from exc
            if p_lo <= floor:
                raise VacuumError("star equation has no root above the vacuum floor")
            p_lo = max(0.4 * p_lo, floor)

        # secant with bisection safeguard on [p_lo, p_hi]
        a, b = p_lo, p_hi
        fa, fb = residual(a), residual(b)
        x0, x1, f0, f1 = a, b, fa, fb
        pstar = None
        for iterations in range(1, 200):
            if f1 == f0:
                x2 = 0.5 * (a + b)
            else:
                x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
                if not (a < x2 < b):
                    x2 = 0.5 * (a + b)
            f2 = residual(x2)
            if f2 > 0.0:
                a = x2
            else:
                b = x2
            x0, f0, x1, f1 = x1, f1, x2, f2
            if abs(x1 - x0) <= STAR_RTOL * x1 or f2 == 0.0:
                pstar = x1
                break
        if pstar is None:
            raise IterationError(
                f"star iteration stalled: bracket [{a}, {b}], residual {f1:.3e}"
            )
        ustar = 0.5 * (u_left(pstar) + u_right(pstar))

    # final states, re-integrated exactly at pstar
    if trivial:
        wl = WaveCurvePoint(pl, rl, float(model_left.internal_energy(rl, pl)), ul)
        wr = WaveCurvePoint(pr, rr, float(model_right.internal_energy(rr, pr)), ur)
    else:
        if pstar <= pl:
            wl = curves["L"].refine_at(pstar)
        else:
            wl = hugoniot_state(rl, ul, pl, pstar, model_left, "left")
        if pstar <= pr:
            wr = curves["R"].refine_at(pstar)
        else:
            wr = hugoniot_state(rr, ur, pr, pstar, model_right, "right")

    left_is_shock = pstar > pl
    right_is_shock = pstar > pr
    c_l = _sound_speed(model_left, rl, pl)
    c_r = _sound_speed(model_right, rr, pr)

    if left_is_shock:
        tau_jump = 1.0 / rl - 1.0 / wl.rho
        if tau_jump > 0.0:
            sigma_l = ul - math.sqrt((pstar - pl) / tau_jump) / rl
        else:
            sigma_l = ul - c_l  # zero-strength limit
        speeds_left = (sigma_l, sigma_l)
    else:
        c_sl = _sound_speed(model_left, wl.rho, pstar)
        speeds_left = (ul - c_l, ustar - c_sl)
    if right_is_shock:
        tau_jump = 1.0 / rr - 1.0 / wr.rho
        if tau_jump > 0.0:
            sigma_r = ur + math.sqrt((pstar - pr) / tau_jump) / rr
        else:
            sigma_r = ur + c_r
        speeds_right = (sigma_r, sigma_r)
    else:
        c_sr = _sound_speed(model_right, wr.rho, pstar)
        speeds_right = (ustar + c_sr, ur + c_r)

    # dense fan interiors for the sampler
    fan_left = fan_right = None
    if not left_is_shock and not trivial:
        fan_left = _fan_table(curves.get("L") or _RarefactionCurve(rl, ul, pl, model_left, -1.0),
                              pstar, model_left, family="left")
    if not right_is_shock and not trivial:
        fan_right = _fan_table(curves.get("R") or _RarefactionCurve(rr, ur, pr, model_right, +1.0),
                               pstar, model_right, family="right")

    def sampler(xi: float):
        if xi <= ustar:
            if left_is_shock:
                if xi < speeds_left[0]:
                    return PrimitiveState(rl, ul, pl), "left"
                return PrimitiveState(wl.rho, ustar, pstar), "left"
            if xi < speeds_left[0]:
                return PrimitiveState(rl, ul, pl), "left"
            if xi >= speeds_left[1]:
                return PrimitiveState(wl.rho, ustar, pstar), "left"
            return _fan_lookup(fan_left, xi), "left"
        if right_is_shock:
            if xi > speeds_right[1]:
                return PrimitiveState(rr, ur, pr), "right"
            return PrimitiveState(wr.rho, ustar, pstar), "right"
        if xi > speeds_right[1]:
            return PrimitiveState(rr, ur, pr), "right"
        if xi <= speeds_right[0]:
            return PrimitiveState(wr.rho, ustar, pstar), "right"
        return _fan_lookup(fan_right, xi), "right"

    return ExactSolution(
        left=left, right=right, model_left=model_left, model_right=model_right,
        pstar=float(pstar), ustar=float(ustar),
        rho_star_l=wl.rho, rho_star_r=wr.rho,
        left_is_shock=left_is_shock, right_is_shock=right_is_shock,
        speeds_left=tuple(float(s) for s in speeds_left),
        speeds_right=tuple(float(s) for s in speeds_right),
        iterations=iterations, _sampler=sampler,
    )


def _fan_table(curve: _RarefactionCurve, pstar: float, model: EosModel, family: str):
    """Tabulate (xi, rho, u, p) densely across a rarefaction fan."""
    curve._ensure(pstar)
    ps = np.linspace(curve.p0, pstar, FAN_SAMPLES)
    rho, u = curve._sol.sol(ps)
    c = np.sqrt(np.array([float(model.sound_speed_sq(r_, p_))
                          for r_, p_ in zip(rho, ps)]))
    xi = u - c if family == "left" else u + c
    order = np.argsort(xi)
    return xi[order], rho[order], u[order], ps[order]


def _fan_lookup(table, xi: float) -> PrimitiveState:
    xis, rho, u, p = table
    return PrimitiveState(
        float(np.interp(xi, xis, rho)),
        float(np.interp(xi, xis, u)),
        float(np.interp(xi, xis, p)),
    )
