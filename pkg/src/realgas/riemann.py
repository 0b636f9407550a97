"""Exact solver for the two-material stiffened-gas Riemann problem.

Each side of the discontinuity carries its own stiffened-gas parameters
(gamma, p_inf), as produced by the local EOS fit.  The star state is the
root of

    f_L(p*) + f_R(p*) + (u_R - u_L) = 0,

where f is the rarefaction velocity function for p* <= p_side and the
shock (Rankine-Hugoniot) function above, exactly as for a polytropic gas
but with every pressure shifted by the side's p_inf.  The root is found by
Newton iteration with an analytic derivative and a guaranteed-bracket
bisection fallback (cf. Toro, "Riemann Solvers and Numerical Methods for
Fluid Dynamics", ch. 4, for the single-gas ancestor of these formulas).

Two entry levels:

* :func:`solve_star` / :func:`sample` - scalar API over :class:`SideState`
  and :class:`RiemannFan`;
* :func:`solve_star_arrays` - the vectorized kernel the finite-volume
  schemes call with one lane per cell interface.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .eos import StiffenedParams
from .errors import ConvexityError, EosDomainError, IterationError, VacuumError
from .states import PrimitiveState

__all__ = [
    "SideState",
    "Wave",
    "RiemannFan",
    "StarBatch",
    "f_rarefaction",
    "f_shock",
    "solve_star",
    "solve_star_arrays",
    "sample",
    "sample_zero_arrays",
]

NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 100
BISECT_MAX_ITER = 200
PRESSURE_FLOOR_FRACTION = 1e-12


@dataclass(frozen=True)
class SideState:
    """One side of a two-material Riemann problem: primitives plus the local
    stiffened-gas fit and its cached sound speed c = sqrt(gamma (p+p_inf)/rho)."""

    rho: float
    u: float
    p: float
    gas: StiffenedParams
    c: float

    @classmethod
    def make(cls, rho: float, u: float, p: float, gas: StiffenedParams) -> "SideState":
        if not rho > 0.0:
            raise EosDomainError(f"side density must be positive, got {rho}")
        if not p + gas.p_inf > 0.0:
            raise ConvexityError(
                f"side state outside fit validity: p + p_inf = {p + gas.p_inf}"
            )
        c = float(gas.sound_speed(rho, p))
        return cls(float(rho), float(u), float(p), gas, c)

    def mirrored(self) -> "SideState":
        return SideState(self.rho, -self.u, self.p, self.gas, self.c)


@dataclass(frozen=True)
class Wave:
    """One nonlinear wave of the fan.

    For a rarefaction, ``head``/``tail`` are the characteristic speeds
    bounding the fan (head on the data side).  For a shock both equal the
    shock speed sigma.
    """

    kind: str  # "rarefaction" | "shock"
    head: float
    tail: float

    @property
    def sigma(self) -> float:
        if self.kind != "shock":
            raise ValueError("sigma is defined for shock waves only")
        return self.head

    @property
    def is_shock(self) -> bool:
        return self.kind == "shock"


@dataclass(frozen=True)
class RiemannFan:
    """Complete self-similar solution of a two-material Riemann problem."""

    left: SideState
    right: SideState
    pstar: float
    ustar: float
    rho_star_l: float
    rho_star_r: float
    c_star_l: float
    c_star_r: float
    left_wave: Wave
    right_wave: Wave
    trivial: bool
    iterations: int

    def mirrored(self) -> "RiemannFan":
        """The fan of the space-reflected problem (x -> -x, u -> -u)."""

        def flip(w: Wave) -> Wave:
            return Wave(w.kind, -w.head, -w.tail)

        return RiemannFan(
            left=self.right.mirrored(),
            right=self.left.mirrored(),
            pstar=self.pstar,
            ustar=-self.ustar,
            rho_star_l=self.rho_star_r,
            rho_star_r=self.rho_star_l,
            c_star_l=self.c_star_r,
            c_star_r=self.c_star_l,
            left_wave=flip(self.right_wave),
            right_wave=flip(self.left_wave),
            trivial=self.trivial,
            iterations=self.iterations,
        )


# ---------------------------------------------------------------------------
# velocity functions of the star equation
# ---------------------------------------------------------------------------


def _f_rarefaction_np(pstar, rho, p, g, pi, c):
    z = (pstar + pi) / (p + pi)
    return (2.0 * c / (g - 1.0)) * (z ** ((g - 1.0) / (2.0 * g)) - 1.0)


def _f_rarefaction_deriv_np(pstar, rho, p, g, pi, c):
    # equals 1/(rho* c*) along the isentrope through (rho, p)
    z = (pstar + pi) / (p + pi)
    return c / (g * (p + pi)) * z ** (-(g + 1.0) / (2.0 * g))


def _f_shock_np(pstar, rho, p, g, pi):
    a = 2.0 / ((g + 1.0) * rho)
    b = (g - 1.0) / (g + 1.0) * p + 2.0 * g / (g + 1.0) * pi
    return (pstar - p) * np.sqrt(a / (pstar + b))

def _f_shock_deriv_np(pstar, rho, p, g, pi):
    a = 2.0 / ((g + 1.0) * rho)
    b = (g - 1.0) / (g + 1.0) * p + 2.0 * g / (g + 1.0) * pi
    return np.sqrt(a / (pstar + b)) * (1.0 - 0.5 * (pstar - p) / (pstar + b))


def _f_side_np(pstar, rho, p, g, pi, c):
    """Branch-aware velocity function and derivative (vectorized)."""
    rare = pstar <= p
    f = np.where(
        rare,
        _f_rarefaction_np(pstar, rho, p, g, pi, c),
        _f_shock_np(pstar, rho, p, g, pi),
    )
    df = np.where(
        rare,
        _f_rarefaction_deriv_np(pstar, rho, p, g, pi, c),
        _f_shock_deriv_np(pstar, rho, p, g, pi),
    )
    return f, df


def f_rarefaction(pstar: float, side: SideState) -> float:
    """Rarefaction velocity function

        f = (2 c / (gamma - 1)) [((p* + p_inf)/(p + p_inf))^((gamma-1)/(2 gamma)) - 1],

    defined for p* + p_inf > 0; the star velocity satisfies u* = u_L - f_L
    on the left and u* = u_R + f_R on the right."""
    gas = side.gas
    if not pstar + gas.p_inf > 0.0:
        raise VacuumError(f"rarefaction reaches vacuum: p* + p_inf = {pstar + gas.p_inf}")
    return float(_f_rarefaction_np(pstar, side.rho, side.p, gas.gamma, gas.p_inf, side.c))


def f_shock(pstar: float, side: SideState) -> float:
    """Shock-branch velocity function

        f = (p* - p) sqrt( (2/((gamma+1) rho)) /
                           (p* + mu2 p + (1 + mu2) p_inf) ),

    continuous with the rarefaction branch (both vanish) at p* = p."""
    gas = side.gas
    b = gas.mu2 * side.p + (1.0 + gas.mu2) * gas.p_inf
    if not pstar + b > 0.0:
        raise IterationError(f"shock mass-flux radicand non-positive at p* = {pstar}")
    return float(_f_shock_np(pstar, side.rho, side.p, gas.gamma, gas.p_inf))


# ---------------------------------------------------------------------------
# vectorized star-state kernel
# ---------------------------------------------------------------------------


@dataclass
class StarBatch:
    """Struct-of-arrays result of the batched star solve (one lane per
    interface).  Wave speeds: head/tail are fan edges for rarefactions and
    both equal sigma for shocks."""

    rho_l: np.ndarray
    u_l: np.ndarray
    p_l: np.ndarray
    g_l: np.ndarray
    pi_l: np.ndarray
    c_l: np.ndarray
    rho_r: np.ndarray
    u_r: np.ndarray
    p_r: np.ndarray
    g_r: np.ndarray
    pi_r: np.ndarray
    c_r: np.ndarray
    pstar: np.ndarray
    ustar: np.ndarray
    rho_sl: np.ndarray
    rho_sr: np.ndarray
    c_sl: np.ndarray
    c_sr: np.ndarray
    left_shock: np.ndarray
    right_shock: np.ndarray
    head_l: np.ndarray
    tail_l: np.ndarray
    head_r: np.ndarray
    tail_r: np.ndarray
    trivial: np.ndarray
    iterations: np.ndarray


def solve_star_arrays(rho_l, u_l, p_l, g_l, pi_l, rho_r, u_r, p_r, g_r, pi_r) -> StarBatch:
    """Solve a batch of two-material Riemann problems.

    All arguments are broadcastable 1-D float arrays.  Raises
    :class:`VacuumError` if any lane would open a vacuum, and
    :class:`IterationError` if any lane fails both Newton and the bisection
    fallback (not reachable for admissible inputs: the star equation is
    strictly monotone).
    """
    arrs = [np.atleast_1d(np.asarray(a, dtype=float))
            for a in (rho_l, u_l, p_l, g_l, pi_l, rho_r, u_r, p_r, g_r, pi_r)]
    rho_l, u_l, p_l, g_l, pi_l, rho_r, u_r, p_r, g_r, pi_r = np.broadcast_arrays(*arrs)

    q_l = p_l + pi_l
    q_r = p_r + pi_r
    if np.any(rho_l <= 0.0) or np.any(rho_r <= 0.0):
        raise EosDomainError("non-positive side density in Riemann batch")
    if np.any(q_l <= 0.0) or np.any(q_r <= 0.0):
        raise ConvexityError("side state outside fit validity (p + p_inf <= 0)")

    c_l = np.sqrt(g_l * q_l / rho_l)
    c_r = np.sqrt(g_r * q_r / rho_r)
    du = u_r - u_l
    trivial = (u_l == u_r) & (p_l == p_r)

    floor = np.maximum(np.maximum(-pi_l, -pi_r), 0.0) + PRESSURE_FLOOR_FRACTION * np.maximum(q_l, q_r)

    f_lo_l, _ = _f_side_np(floor, rho_l, p_l, g_l, pi_l, c_l)
    f_lo_r, _ = _f_side_np(floor, rho_r, p_r, g_r, pi_r, c_r)
    vacuum = (f_lo_l + f_lo_r + du > 0.0) & ~trivial
    if np.any(vacuum):
        i = int(np.argmax(vacuum))
        raise VacuumError(
            f"vacuum formation in lane {i}: "
            f"L=({rho_l[i]}, {u_l[i]}, {p_l[i]}), R=({rho_r[i]}, {u_r[i]}, {p_r[i]})"
        )

    # acoustic (PVRS-style) initial guess, clamped to the admissible range
    cap_l = rho_l * c_l
    cap_r = rho_r * c_r
    p0 = (cap_r * p_l + cap_l * p_r + cap_l * cap_r * (u_l - u_r)) / (cap_l + cap_r)
    p = np.maximum(p0, floor)

    # Newton on the compressed set of unconverged lanes (converged lanes
    # are dropped so late iterations touch only the stragglers)
    shape = p.shape
    p = np.ravel(p).copy()
    iterations = np.zeros(p.size, dtype=np.int64)
    idx = np.flatnonzero(~np.ravel(trivial))
    flat = [np.ravel(a) for a in (rho_l, p_l, g_l, pi_l, c_l,
                                  rho_r, p_r, g_r, pi_r, c_r, du, floor)]
    (rho_l_f, p_l_f, g_l_f, pi_l_f, c_l_f,
     rho_r_f, p_r_f, g_r_f, pi_r_f, c_r_f, du_f, floor_f) = flat
    for _ in range(NEWTON_MAX_ITER):
        if idx.size == 0:
            break
        pk = p[idx]
        f_l, df_l = _f_side_np(pk, rho_l_f[idx], p_l_f[idx], g_l_f[idx],
                               pi_l_f[idx], c_l_f[idx])
        f_r, df_r = _f_side_np(pk, rho_r_f[idx], p_r_f[idx], g_r_f[idx],
                               pi_r_f[idx], c_r_f[idx])
        step = (f_l + f_r + du_f[idx]) / (df_l + df_r)
        p_new = np.maximum(pk - step, floor_f[idx])
        iterations[idx] += 1
        p[idx] = p_new
        idx = idx[np.abs(p_new - pk) > NEWTON_TOL * p_new]

    if idx.size:
        open_mask = np.zeros(p.size, dtype=bool)
        open_mask[idx] = True
        p = _bisect_fallback(open_mask, p, floor_f, du_f,
                             rho_l_f, p_l_f, g_l_f, pi_l_f, c_l_f,
                             rho_r_f, p_r_f, g_r_f, pi_r_f, c_r_f)
    p = p.reshape(shape)
    iterations = iterations.reshape(shape)

    pstar = np.where(trivial, p_l, p)
    f_l, _ = _f_side_np(pstar, rho_l, p_l, g_l, pi_l, c_l)
    f_r, _ = _f_side_np(pstar, rho_r, p_r, g_r, pi_r, c_r)
    ustar = np.where(trivial, u_l, 0.5 * ((u_l - f_l) + (u_r + f_r)))

    left_shock = pstar > p_l
    right_shock = pstar > p_r

    rho_sl = _star_density(pstar, rho_l, p_l, g_l, pi_l, left_shock)
    rho_sr = _star_density(pstar, rho_r, p_r, g_r, pi_r, right_shock)
    c_sl = np.sqrt(g_l * (pstar + pi_l) / rho_sl)
    c_sr = np.sqrt(g_r * (pstar + pi_r) / rho_sr)

    # wave speeds; the shock speed uses the stable shifted-pressure form
    #   sigma_R = u_R + c_R sqrt((gamma+1)/(2 gamma) q*/q_R + (gamma-1)/(2 gamma)),
    # algebraically identical to the mass-flux relation but regular at zero
    # strength (mirrored for the left wave).
    sig_l = u_l - c_l * np.sqrt(
        (g_l + 1.0) / (2.0 * g_l) * (pstar + pi_l) / q_l + (g_l - 1.0) / (2.0 * g_l)
    )
    sig_r = u_r + c_r * np.sqrt(
        (g_r + 1.0) / (2.0 * g_r) * (pstar + pi_r) / q_r + (g_r - 1.0) / (2.0 * g_r)
    )
    head_l = np.where(left_shock, sig_l, u_l - c_l)
    tail_l = np.where(left_shock, sig_l, ustar - c_sl)
    head_r = np.where(right_shock, sig_r, u_r + c_r)
    tail_r = np.where(right_shock, sig_r, ustar + c_sr)

    return StarBatch(
        rho_l=rho_l, u_l=u_l, p_l=p_l, g_l=g_l, pi_l=pi_l, c_l=c_l,
        rho_r=rho_r, u_r=u_r, p_r=p_r, g_r=g_r, pi_r=pi_r, c_r=c_r,
        pstar=pstar, ustar=ustar,
        rho_sl=rho_sl, rho_sr=rho_sr, c_sl=c_sl, c_sr=c_sr,
        left_shock=left_shock, right_shock=right_shock,
        head_l=head_l, tail_l=tail_l, head_r=head_r, tail_r=tail_r,
        trivial=trivial, iterations=iterations,
    )


def _star_density(pstar, rho, p, g, pi, shock_mask):
    mu2 = (g - 1.0) / (g + 1.0)
    g_rel = rho * (pstar + mu2 * p + (1.0 + mu2) * pi) / (p + mu2 * pstar + (1.0 + mu2) * pi)
    isen = rho * ((pstar + pi) / (p + pi)) ** (1.0 / g)
    return np.where(shock_mask, g_rel, isen)


def _bisect_fallback(mask, p, floor, du,
                     rho_l, p_l, g_l, pi_l, c_l,
                     rho_r, p_r, g_r, pi_r, c_r):
    lo = np.where(mask, floor, p)
    hi = np.where(mask, np.maximum(np.maximum(p_l, p_r), p) * 2.0, p)

    def residual(x):
        f_l, _ = _f_side_np(x, rho_l, p_l, g_l, pi_l, c_l)
        f_r, _ = _f_side_np(x, rho_r, p_r, g_r, pi_r, c_r)
        return f_l + f_r + du

    for _ in range(64):
        bad = mask & (residual(hi) < 0.0)
        if not np.any(bad):
            break
        hi = np.where(bad, hi * 2.0, hi)
    else:
        raise IterationError("bisection fallback could not bracket the star pressure")

    for _ in range(BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        up = residual(mid) > 0.0
        hi = np.where(mask & up, mid, hi)
        lo = np.where(mask & ~up, mid, lo)
        if np.all(~mask | (hi - lo <= NEWTON_TOL * np.maximum(lo, floor))):
            break
    return np.where(mask, 0.5 * (lo + hi), p)


# ---------------------------------------------------------------------------
# scalar API
# ---------------------------------------------------------------------------


def solve_star(left: SideState, right: SideState) -> RiemannFan:
    """Solve one two-material Riemann problem and classify its waves.

    Equal (u, p) on both sides short-circuits to the trivial contact-only
    fan with zero iterations; otherwise Newton iterates the star equation
    to a relative pressure change of 1e-12.
    """
    batch = solve_star_arrays(
        left.rho, left.u, left.p, left.gas.gamma, left.gas.p_inf,
        right.rho, right.u, right.p, right.gas.gamma, right.gas.p_inf,
    )
    return _fan_from_batch(batch, 0, left, right)


def _fan_from_batch(b: StarBatch, i: int, left: SideState, right: SideState) -> RiemannFan:
    def wave(shock, head, tail):
        return Wave("shock" if shock else "rarefaction", float(head), float(tail))

    return RiemannFan(
        left=left,
        right=right,
        pstar=float(b.pstar[i]),
        ustar=float(b.ustar[i]),
        rho_star_l=float(b.rho_sl[i]),
        rho_star_r=float(b.rho_sr[i]),
        c_star_l=float(b.c_sl[i]),
        c_star_r=float(b.c_sr[i]),
        left_wave=wave(bool(b.left_shock[i]), b.head_l[i], b.tail_l[i]),
        right_wave=wave(bool(b.right_shock[i]), b.head_r[i], b.tail_r[i]),
        trivial=bool(b.trivial[i]),
        iterations=int(b.iterations[i]),
    )


def sample(fan: RiemannFan, xi: float):
    """Evaluate the self-similar solution on the ray x/t = xi.

    Returns ``(PrimitiveState, tag)`` where tag is "left" or "right"; the
    material flips at the contact (xi = u*, assigned to the left side).
    """
    L, R = fan.left, fan.right
    if xi <= fan.ustar:
        gas = L.gas
        if fan.left_wave.is_shock:
            if xi < fan.left_wave.sigma:
                return PrimitiveState(L.rho, L.u, L.p), "left"
            return PrimitiveState(fan.rho_star_l, fan.ustar, fan.pstar), "left"
        if xi < fan.left_wave.head:
            return PrimitiveState(L.rho, L.u, L.p), "left"
        if xi >= fan.left_wave.tail:
            return PrimitiveState(fan.rho_star_l, fan.ustar, fan.pstar), "left"
        psi = L.u + 2.0 * L.c / (gas.gamma - 1.0)
        c = (psi - xi) * (gas.gamma - 1.0) / (gas.gamma + 1.0)
        u = xi + c
        rho = L.rho * (c / L.c) ** (2.0 / (gas.gamma - 1.0))
        p = (L.p + gas.p_inf) * (rho / L.rho) ** gas.gamma - gas.p_inf
        return PrimitiveState(rho, u, p), "left"

    gas = R.gas
    if fan.right_wave.is_shock:
        if xi > fan.right_wave.sigma:
            return PrimitiveState(R.rho, R.u, R.p), "right"
        return PrimitiveState(fan.rho_star_r, fan.ustar, fan.pstar), "right"
    if xi > fan.right_wave.head:
        return PrimitiveState(R.rho, R.u, R.p), "right"
    if xi <= fan.right_wave.tail:
        return PrimitiveState(fan.rho_star_r, fan.ustar, fan.pstar), "right"
    phi = R.u - 2.0 * R.c / (gas.gamma - 1.0)
    c = (xi - phi) * (gas.gamma - 1.0) / (gas.gamma + 1.0)
    u = xi - c
    rho = R.rho * (c / R.c) ** (2.0 / (gas.gamma - 1.0))
    p = (R.p + gas.p_inf) * (rho / R.rho) ** gas.gamma - gas.p_inf
    return PrimitiveState(rho, u, p), "right"


def sample_zero_arrays(b: StarBatch):
    """Vectorized sampling of every lane at xi = 0.

    Returns ``(rho, u, p, from_left)`` plus the owning side's (gamma,
    p_inf) so callers can convert to energy consistently with the fan.
    """
    from_left = b.ustar >= 0.0

    # star values of the owning side
    rho = np.where(from_left, b.rho_sl, b.rho_sr)
    u = b.ustar.copy()
    p = b.pstar.copy()

    # data regions: ray left of the left wave head, or right of the right head
    left_data = b.head_l >= 0.0
    right_data = b.head_r <= 0.0
    rho = np.where(left_data, b.rho_l, rho)
    u = np.where(left_data, b.u_l, u)
    p = np.where(left_data, b.p_l, p)
    rho = np.where(right_data, b.rho_r, rho)
    u = np.where(right_data, b.u_r, u)
    p = np.where(right_data, b.p_r, p)

    # interior of a sonic rarefaction fan
    in_l = (~b.left_shock) & (b.head_l < 0.0) & (b.tail_l > 0.0)
    if np.any(in_l):
        psi = b.u_l + 2.0 * b.c_l / (b.g_l - 1.0)
        c0 = psi * (b.g_l - 1.0) / (b.g_l + 1.0)
        rho0 = b.rho_l * np.where(in_l, np.abs(c0) / b.c_l, 1.0) ** (2.0 / (b.g_l - 1.0))
        p0 = (b.p_l + b.pi_l) * (rho0 / b.rho_l) ** b.g_l - b.pi_l
        rho = np.where(in_l, rho0, rho)
        u = np.where(in_l, c0, u)
        p = np.where(in_l, p0, p)
        from_left = from_left | in_l
    in_r = (~b.right_shock) & (b.head_r > 0.0) & (b.tail_r < 0.0)
    if np.any(in_r):
        phi = b.u_r - 2.0 * b.c_r / (b.g_r - 1.0)
        c0 = -phi * (b.g_r - 1.0) / (b.g_r + 1.0)
        rho0 = b.rho_r * np.where(in_r, np.abs(c0) / b.c_r, 1.0) ** (2.0 / (b.g_r - 1.0))
        p0 = (b.p_r + b.pi_r) * (rho0 / b.rho_r) ** b.g_r - b.pi_r
        rho = np.where(in_r, rho0, rho)
        u = np.where(in_r, -c0, u)
        p = np.where(in_r, p0, p)
        from_left = from_left & ~in_r

    gamma = np.where(from_left, b.g_l, b.g_r)
    pi = np.where(from_left, b.pi_l, b.pi_r)
    return rho, u, p, from_left, gamma, pi
