"""Equation-of-state layer for materials with a pressure law linear in energy.

All models here share the structure

    p(rho, e) = kappa(rho) * e + chi(rho),

which covers polytropic and stiffened gases as well as Mie-Gruneisen-type
closures built on reference curves (JWL, Cochran-Chan).  Every model exposes
``kappa_chi`` returning the two coefficient functions *and their analytic
density derivatives*; those derivatives feed the general sound speed

    c^2 = kappa'(rho) e + chi'(rho) + kappa(rho) p / rho^2

and the entropy-variation measurements of the flux solvers, so they are
implemented in closed form rather than by differencing.

Units follow the CGS-Mbar-microsecond system throughout: density in g/cm^3,
pressure in Mbar, specific energy in Mbar*cm^3/g, velocity in cm/us.  The
system is self-consistent (rho*u^2 carries Mbar), so all routines treat
values as plain numbers.

Everything is vectorized: density/pressure/energy arguments may be floats or
numpy arrays of matching shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvexityError, DegenerateEosError, EosDomainError

__all__ = [
    "EosModel",
    "Polytropic",
    "Stiffened",
    "Jwl",
    "CochranChan",
    "StiffenedParams",
    "ConvexityReport",
]


@dataclass(frozen=True)
class StiffenedParams:
    """Local stiffened-gas fit (gamma, p_inf) with the cached ratio
    mu2 = (gamma - 1) / (gamma + 1).

    ``p_inf`` may legitimately be negative (JWL fits are); validity only
    requires p + p_inf > 0 at the states the fit is used on.
    """

    gamma: float
    p_inf: float
    mu2: float = field(init=False)

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise DegenerateEosError(f"stiffened fit needs gamma > 1, got {self.gamma}")
        object.__setattr__(self, "mu2", (self.gamma - 1.0) / (self.gamma + 1.0))

    def sound_speed(self, rho, p):
        """c = sqrt(gamma (p + p_inf) / rho) for this fit."""
        c2 = self.gamma * (p + self.p_inf) / rho
        if np.any(np.asarray(c2) <= 0.0):
            raise ConvexityError(
                f"stiffened sound speed undefined: gamma={self.gamma}, p_inf={self.p_inf}"
            )
        return np.sqrt(c2)

    def internal_energy(self, rho, p):
        """e = (p + gamma p_inf) / ((gamma - 1) rho)."""
        return (p + self.gamma * self.p_inf) / ((self.gamma - 1.0) * rho)


def _check_density(rho):
    if isinstance(rho, (float, int)):
        if rho > 0.0 and math.isfinite(rho):
            return
        raise EosDomainError(f"density must be positive and finite, got {rho!r}")
    arr = np.asarray(rho)
    if not np.all((arr > 0.0) & np.isfinite(arr)):
        raise EosDomainError(f"density must be positive and finite, got {rho!r}")


def _any_nonpositive(x) -> bool:
    if isinstance(x, float):
        return x <= 0.0
    return bool(np.any(np.asarray(x) <= 0.0))


class EosModel:
    """Base class: a closure p = kappa(rho) e + chi(rho).

    Subclasses implement :meth:`kappa_chi`; the generic thermodynamic
    operations below are shared.
    """

    def kappa_chi(self, rho):
        """Return (kappa, chi, dkappa/drho, dchi/drho) at density ``rho``.

        Derivatives are closed-form differentiations of the model's
        reference curves; no numerical differencing is involved.
        """
        raise NotImplementedError

    def pressure(self, rho, e):
        """p = kappa(rho) e + chi(rho)."""
        _check_density(rho)
        kappa, chi, _, _ = self.kappa_chi(rho)
        return kappa * e + chi

    def internal_energy(self, rho, p):
        """Invert the pressure law: e = (p - chi(rho)) / kappa(rho)."""
        _check_density(rho)
        kappa, chi, _, _ = self.kappa_chi(rho)
        if _any_nonpositive(kappa):
            raise DegenerateEosError(f"kappa(rho) <= 0 at rho={rho!r}")
        return (p - chi) / kappa

    def sound_speed(self, rho, p):
        """General sound speed c with c^2 = kappa' e + chi' + kappa p / rho^2."""
        c2 = self.sound_speed_sq(rho, p)
        if _any_nonpositive(c2):
            raise ConvexityError(
                f"c^2 <= 0 at (rho={rho!r}, p={p!r}); state outside the convex region"
            )
        return math.sqrt(c2) if isinstance(c2, float) else np.sqrt(c2)

    def sound_speed_sq(self, rho, p):
        """c^2 without the positivity check (callers that mask handle it)."""
        _check_density(rho)
        kappa, chi, dkappa, dchi = self.kappa_chi(rho)
        if _any_nonpositive(kappa):
            raise DegenerateEosError(f"kappa(rho) <= 0 at rho={rho!r}")
        e = (p - chi) / kappa
        return dkappa * e + dchi + kappa * p / (rho * rho)

    def stiffened_fit(self, rho0) -> StiffenedParams:
        """Local stiffened-gas approximation anchored at background density rho0:

            gamma(rho0) = 1 + kappa(rho0) / rho0,
            p_inf(rho0) = -chi(rho0) / gamma(rho0).
        """
        gamma, p_inf = self.stiffened_fit_arrays(rho0)
        return StiffenedParams(float(gamma), float(p_inf))

    def stiffened_fit_arrays(self, rho0):
        """Vectorized fit: returns (gamma, p_inf) as arrays matching rho0."""
        _check_density(rho0)
        kappa, chi, _, _ = self.kappa_chi(rho0)
        gamma = 1.0 + kappa / rho0
        if np.any(np.asarray(gamma) <= 1.0):
            raise DegenerateEosError(f"fitted gamma <= 1 at rho0={rho0!r}")
        return gamma, -chi / gamma

    def convexity_check(self, rho_range, p_range, samples=16) -> "ConvexityReport":
        """Sample the fundamental derivative

            G = -(tau/2) (d^2 p / d tau^2)_S / (d p / d tau)_S

        over a (rho, p) grid and report the minimum and any violating states.

        For constant-gamma models G = (gamma + 1) / 2 exactly; otherwise G is
        measured by second-order central differences of p along numerically
        integrated isentropes (report-only, so the cost is acceptable).
        """
        if samples < 2:
            raise ValueError("need at least 2 samples per axis")
        rho_lo, rho_hi = rho_range
        p_lo, p_hi = p_range
        if not (0.0 < rho_lo < rho_hi and p_lo < p_hi):
            raise ValueError("ranges must be positive and increasing")
        rhos = np.linspace(rho_lo, rho_hi, samples)
        ps = np.linspace(p_lo, p_hi, samples)
        g_const = self._constant_fundamental_derivative()
        values = np.empty((samples, samples))
        for i, r in enumerate(rhos):
            for j, p in enumerate(ps):
                if g_const is not None:
                    values[i, j] = g_const
                else:
                    values[i, j] = self._fundamental_derivative_fd(float(r), float(p))
        imin = np.unravel_index(np.argmin(values), values.shape)
        bad = [
            (float(rhos[i]), float(ps[j]))
            for i in range(samples)
            for j in range(samples)
            if values[i, j] <= 0.0
        ]
        return ConvexityReport(
            minimum=float(values[imin]),
            at_state=(float(rhos[imin[0]]), float(ps[imin[1]])),
            violations=bad,
        )

    def _constant_fundamental_derivative(self):
        return None

    def _fundamental_derivative_fd(self, rho, p):
        # central differences of p(tau) along the isentrope through (rho, p)
        tau0 = 1.0 / rho
        h = 1e-3 * tau0
        e0 = float(self.internal_energy(rho, p))

        def p_at_tau(tau):
            return self._isentrope_pressure(rho, e0, 1.0 / tau)

        fp, fm = p_at_tau(tau0 + h), p_at_tau(tau0 - h)
        d1 = (fp - fm) / (2.0 * h)
        d2 = (fp - 2.0 * p + fm) / (h * h)
        return -0.5 * tau0 * d2 / d1

    def _isentrope_pressure(self, rho_a, e_a, rho_b, nsteps=512):
        # RK4 on de/drho = p(rho, e)/rho^2 (Gibbs with dS = 0)
        h = (rho_b - rho_a) / nsteps
        r, e = rho_a, e_a

        def f(r_, e_):
            kappa, chi, _, _ = self.kappa_chi(r_)
            return (kappa * e_ + chi) / (r_ * r_)

        for _ in range(nsteps):
            k1 = f(r, e)
            k2 = f(r + 0.5 * h, e + 0.5 * h * k1)
            k3 = f(r + 0.5 * h, e + 0.5 * h * k2)
            k4 = f(r + h, e + h * k3)
            e += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
            r += h
        kappa, chi, _, _ = self.kappa_chi(r)
        return kappa * e + chi


@dataclass(frozen=True)
class ConvexityReport:
    """Result of a fundamental-derivative sweep."""

    minimum: float
    at_state: tuple
    violations: list

    @property
    def ok(self) -> bool:
        return self.minimum > 0.0


@dataclass(frozen=True)
class Polytropic(EosModel):
    """Ideal gas: p = (gamma - 1) rho e."""

    gamma: float

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise DegenerateEosError(f"polytropic gamma must exceed 1, got {self.gamma}")

    def kappa_chi(self, rho):
        _check_density(rho)
        g1 = self.gamma - 1.0
        if isinstance(rho, float):
            return g1 * rho, 0.0, g1, 0.0
        zero = np.zeros_like(np.asarray(rho, dtype=float))
        return g1 * np.asarray(rho, dtype=float), zero, np.full_like(zero, g1), zero

    def sound_speed_sq(self, rho, p):
        # the general formula reduces exactly to gamma p / rho
        _check_density(rho)
        if isinstance(rho, float) and isinstance(p, float):
            return self.gamma * p / rho
        return self.gamma * np.asarray(p, dtype=float) / rho

    def stiffened_fit_arrays(self, rho0):
        # the fit of a polytropic gas is itself, for every anchor density
        _check_density(rho0)
        shape = np.shape(rho0)
        return np.full(shape, self.gamma), np.zeros(shape)

    def _constant_fundamental_derivative(self):
        return 0.5 * (self.gamma + 1.0)


@dataclass(frozen=True)
class Stiffened(EosModel):
    """Stiffened gas: p = (gamma - 1) rho e - gamma p_inf."""

    gamma: float
    p_inf: float

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise DegenerateEosError(f"stiffened gamma must exceed 1, got {self.gamma}")

    def kappa_chi(self, rho):
        _check_density(rho)
        g1 = self.gamma - 1.0
        if isinstance(rho, float):
            return g1 * rho, -self.gamma * self.p_inf, g1, 0.0
        rho = np.asarray(rho, dtype=float)
        zero = np.zeros_like(rho)
        chi = np.full_like(rho, -self.gamma * self.p_inf)
        return g1 * rho, chi, np.full_like(rho, g1), zero

    def sound_speed_sq(self, rho, p):
        # the general formula reduces exactly to gamma (p + p_inf) / rho
        _check_density(rho)
        if isinstance(rho, float) and isinstance(p, float):
            return self.gamma * (p + self.p_inf) / rho
        return self.gamma * (np.asarray(p, dtype=float) + self.p_inf) / rho

    def stiffened_fit_arrays(self, rho0):
        # the fit of a stiffened gas is a fixed point, for every anchor density
        _check_density(rho0)
        shape = np.shape(rho0)
        return np.full(shape, self.gamma), np.full(shape, self.p_inf)

    def _constant_fundamental_derivative(self):
        return 0.5 * (self.gamma + 1.0)


@dataclass(frozen=True)
class Jwl(EosModel):
    """Jones-Wilkins-Lee detonation-product EOS.

    kappa(rho) = Gamma rho and chi(rho) = -Gamma rho e_ref(rho) + p_ref(rho)
    with the exponential reference curves

        p_ref(rho) = A exp(-R1 rho0/rho) + B exp(-R2 rho0/rho),
        e_ref(rho) = A/(R1 rho0) exp(-R1 rho0/rho)
                   + B/(R2 rho0) exp(-R2 rho0/rho) - e0.

    The curves satisfy de_ref/drho = p_ref/rho^2, which the chi derivative
    uses below.
    """

    rho0: float
    e0: float
    Gamma: float
    A: float
    B: float
    R1: float
    R2: float

    def __post_init__(self):
        if not (self.rho0 > 0.0 and self.A > 0.0 and self.R1 > 0.0 and self.R2 > 0.0):
            raise EosDomainError("JWL requires rho0, A, R1, R2 > 0")
        if not self.Gamma > 0.0:
            raise DegenerateEosError("JWL requires Gamma > 0 for kappa > 0")

    def _ref_curves(self, rho):
        exp = math.exp if isinstance(rho, float) else np.exp
        x = self.rho0 / rho
        t1 = self.A * exp(-self.R1 * x)
        t2 = self.B * exp(-self.R2 * x)
        p_ref = t1 + t2
        e_ref = t1 / (self.R1 * self.rho0) + t2 / (self.R2 * self.rho0) - self.e0
        dp_ref = (self.R1 * t1 + self.R2 * t2) * self.rho0 / (rho * rho)
        return p_ref, e_ref, dp_ref

    def kappa_chi(self, rho):
        _check_density(rho)
        if not isinstance(rho, float):
            rho = np.asarray(rho, dtype=float)
        p_ref, e_ref, dp_ref = self._ref_curves(rho)
        kappa = self.Gamma * rho
        chi = -kappa * e_ref + p_ref
        # chi' = -Gamma e_ref - Gamma rho e_ref' + p_ref', with e_ref' = p_ref/rho^2
        dchi = -self.Gamma * e_ref - self.Gamma * p_ref / rho + dp_ref
        dkappa = self.Gamma if isinstance(rho, float) else np.full_like(rho, self.Gamma)
        return kappa, chi, dkappa, dchi


@dataclass(frozen=True)
class CochranChan(EosModel):
    """Cochran-Chan solid-explosive EOS.

    Same Gruneisen structure as JWL but with power-law reference curves

        p_ref(rho) = A (rho0/rho)^(-eps1) - B (rho0/rho)^(-eps2),
        e_ref(rho) = -A/((1-eps1) rho0) [(rho0/rho)^(1-eps1) - 1]
                   +  B/((1-eps2) rho0) [(rho0/rho)^(1-eps2) - 1] - e0,

    again with de_ref/drho = p_ref/rho^2.
    """

    rho0: float
    e0: float
    Gamma: float
    A: float
    B: float
    eps1: float
    eps2: float

    def __post_init__(self):
        if not self.rho0 > 0.0:
            raise EosDomainError("Cochran-Chan requires rho0 > 0")
        if math.isclose(self.eps1, 1.0) or math.isclose(self.eps2, 1.0):
            raise EosDomainError("Cochran-Chan exponents must differ from 1")
        if not self.Gamma > 0.0:
            raise DegenerateEosError("Cochran-Chan requires Gamma > 0 for kappa > 0")

    def _ref_curves(self, rho):
        x = self.rho0 / rho
        t1 = self.A * x ** (-self.eps1)
        t2 = self.B * x ** (-self.eps2)
        p_ref = t1 - t2
        e_ref = (
            -self.A / ((1.0 - self.eps1) * self.rho0) * (x ** (1.0 - self.eps1) - 1.0)
            + self.B / ((1.0 - self.eps2) * self.rho0) * (x ** (1.0 - self.eps2) - 1.0)
            - self.e0
        )
        # d/drho (rho0/rho)^(-eps) = eps (rho0/rho)^(-eps) / rho
        dp_ref = (self.eps1 * t1 - self.eps2 * t2) / rho
        return p_ref, e_ref, dp_ref

    def kappa_chi(self, rho):
        _check_density(rho)
        if not isinstance(rho, float):
            rho = np.asarray(rho, dtype=float)
        p_ref, e_ref, dp_ref = self._ref_curves(rho)
        kappa = self.Gamma * rho
        chi = -kappa * e_ref + p_ref
        dchi = -self.Gamma * e_ref - self.Gamma * p_ref / rho + dp_ref
        dkappa = self.Gamma if isinstance(rho, float) else np.full_like(rho, self.Gamma)
        return kappa, chi, dkappa, dchi
