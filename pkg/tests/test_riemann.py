"""Two-material stiffened-gas Riemann solver tests.

Star-state reference values were frozen from an independent pre-build
bisection script (200 halvings of the monotone star equation).
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from realgas.eos import StiffenedParams
from realgas.errors import VacuumError
from realgas.riemann import (
    RiemannFan,
    SideState,
    f_rarefaction,
    f_shock,
    sample,
    sample_zero_arrays,
    solve_star,
    solve_star_arrays,
)

IDEAL14 = StiffenedParams(gamma=1.4, p_inf=0.0)


def side(rho, u, p, gamma=1.4, p_inf=0.0):
    return SideState.make(rho, u, p, StiffenedParams(gamma, p_inf))


SOD_L = side(1.0, 0.0, 1.0)
SOD_R = side(0.125, 0.0, 0.1)

# frozen bisection oracle values
SOD_PSTAR = 0.3031301780506468
SOD_USTAR = 0.9274526200489499
SOD_RHO_SL = 0.42631942817849516
SOD_RHO_SR = 0.265573711705307


class TestVelocityFunctions:
    def test_zero_strength(self):
        assert f_rarefaction(SOD_L.p, SOD_L) == 0.0
        assert f_shock(SOD_L.p, SOD_L) == 0.0

    def test_rarefaction_value(self):
        # frozen: (2 sqrt(1.4)/0.4) (0.1^(1/7) - 1); u* - u_L = -f = +1.6583...
        val = f_rarefaction(0.1, side(1.0, 0.0, 1.0))
        assert val == pytest.approx(-1.6583619228710598, rel=1e-14)

    def test_rarefaction_monotone_in_pstar(self):
        ps = np.linspace(0.05, 1.0, 40)
        vals = [f_rarefaction(float(p), SOD_L) for p in ps]
        assert np.all(np.diff(vals) > 0.0)

    def test_shock_value_closes_sod(self):
        # u* = u_R + f_R at the Sod star pressure
        f = f_shock(SOD_PSTAR, SOD_R)
        assert f == pytest.approx(SOD_USTAR, rel=1e-12)

    def test_branch_continuity(self):
        s = side(0.7, 0.0, 2.0, gamma=1.9, p_inf=0.3)
        for eps in (1e-6, 1e-9, 1e-12):
            p = s.p * (1.0 + eps)
            assert abs(f_shock(p, s) - f_rarefaction(p, s)) < 1e-10 * s.c

    def test_vacuum_adjacent_raises(self):
        s = side(1.0, 0.0, 1.0, gamma=2.0, p_inf=-0.5)
        with pytest.raises(VacuumError):
            f_rarefaction(0.4, s)  # p* + p_inf < 0


class TestSolveStar:
    def test_sod(self):
        fan = solve_star(SOD_L, SOD_R)
        assert fan.pstar == pytest.approx(SOD_PSTAR, rel=1e-11)
        assert fan.ustar == pytest.approx(SOD_USTAR, rel=1e-11)
        assert fan.rho_star_l == pytest.approx(SOD_RHO_SL, rel=1e-10)
        assert fan.rho_star_r == pytest.approx(SOD_RHO_SR, rel=1e-10)
        assert not fan.left_wave.is_shock
        assert fan.right_wave.is_shock

    def test_trivial_contact_skips_iteration(self):
        # two materials, equal velocity and pressure
        left = side(1.134, 0.1, 2e4, gamma=2.19, p_inf=-3052.0547945205481)
        right = side(0.5, 0.1, 2e4, gamma=2.19, p_inf=-151.17)
        fan = solve_star(left, right)
        assert fan.trivial
        assert fan.iterations == 0
        assert fan.pstar == 2e4
        assert fan.ustar == 0.1
        assert fan.rho_star_l == left.rho and fan.rho_star_r == right.rho

    def test_two_material_case_matches_bisection(self):
        # frozen: independent bisection oracle
        left = side(1.0, 0.0, 2.0, gamma=1.4, p_inf=0.0)
        right = side(1.0, 0.0, 0.5, gamma=1.25, p_inf=1.0)
        fan = solve_star(left, right)
        assert fan.pstar == pytest.approx(1.3140364891261345, rel=1e-10)
        assert fan.ustar == pytest.approx(0.4872818235523554, rel=1e-10)

    def test_star_equation_residual_small(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            gl, gr = rng.uniform(1.1, 5.0, 2)
            pl, pr = rng.uniform(0.05, 20.0, 2)
            pil = rng.uniform(-0.4 * pl, 10.0 * pl)
            pir = rng.uniform(-0.4 * pr, 10.0 * pr)
            L = side(rng.uniform(0.1, 5.0), rng.uniform(-0.5, 0.5), pl, gl, pil)
            R = side(rng.uniform(0.1, 5.0), rng.uniform(-0.5, 0.5), pr, gr, pir)
            try:
                fan = solve_star(L, R)
            except VacuumError:
                continue
            res = f_side_residual(fan)
            assert abs(res) <= 1e-10 * max(abs(L.u), abs(R.u), L.c, R.c)

    def test_wave_speed_ordering(self):
        rng = np.random.default_rng(6)
        for _ in range(100):
            L = side(rng.uniform(0.1, 4.0), rng.uniform(-1, 1), rng.uniform(0.1, 8.0),
                     rng.uniform(1.1, 3.0), rng.uniform(0.0, 1.0))
            R = side(rng.uniform(0.1, 4.0), rng.uniform(-1, 1), rng.uniform(0.1, 8.0),
                     rng.uniform(1.1, 3.0), rng.uniform(0.0, 1.0))
            try:
                fan = solve_star(L, R)
            except VacuumError:
                continue
            assert fan.left_wave.head <= fan.left_wave.tail + 1e-14
            assert fan.left_wave.tail <= fan.ustar + 1e-12
            assert fan.ustar <= fan.right_wave.tail + 1e-12
            assert fan.right_wave.tail <= fan.right_wave.head + 1e-14

    def test_mirror_symmetry(self):
        L = side(1.0, 0.3, 2.0, 1.4, 0.0)
        R = side(0.5, -0.1, 0.4, 1.9, 0.2)
        fan = solve_star(L, R)
        mir = solve_star(R.mirrored(), L.mirrored())
        assert mir.pstar == fan.pstar
        assert mir.ustar == -fan.ustar
        assert mir.rho_star_l == fan.rho_star_r
        assert mir.rho_star_r == fan.rho_star_l

    def test_vacuum_detected(self):
        L = side(1.0, -5.0, 0.1)
        R = side(1.0, 5.0, 0.1)
        with pytest.raises(VacuumError):
            solve_star(L, R)

    def test_single_material_matches_bisection_oracle(self):
        from oracles import bisection_star

        rng = np.random.default_rng(31)
        for _ in range(40):
            g = rng.uniform(1.1, 4.0)
            p_l, p_r = rng.uniform(0.2, 4.0, 2)
            pi = rng.uniform(0.0, 2.0)
            rho_l, rho_r = rng.uniform(0.2, 3.0, 2)
            u_l, u_r = rng.uniform(-0.6, 0.6, 2)
            try:
                fan = solve_star(side(rho_l, u_l, p_l, g, pi),
                                 side(rho_r, u_r, p_r, g, pi))
            except VacuumError:
                continue
            ps, us = bisection_star(rho_l, u_l, p_l, rho_r, u_r, p_r, g, pi)
            assert fan.pstar == pytest.approx(ps, rel=1e-12)
            assert fan.ustar == pytest.approx(us, rel=1e-12, abs=1e-12 * fan.c_star_l)

    def test_classification_thresholds(self):
        fan = solve_star(SOD_L, SOD_R)
        assert (fan.pstar > SOD_L.p) == fan.left_wave.is_shock
        assert (fan.pstar > SOD_R.p) == fan.right_wave.is_shock


def f_side_residual(fan: RiemannFan) -> float:
    from realgas.riemann import _f_side_np

    f_l, _ = _f_side_np(fan.pstar, fan.left.rho, fan.left.p,
                        fan.left.gas.gamma, fan.left.gas.p_inf, fan.left.c)
    f_r, _ = _f_side_np(fan.pstar, fan.right.rho, fan.right.p,
                        fan.right.gas.gamma, fan.right.gas.p_inf, fan.right.c)
    return float(f_l + f_r + (fan.right.u - fan.left.u))


def shock_rh_residuals(fan: RiemannFan, which: str):
    """Relative residuals of the three jump conditions for one shock."""
    if which == "left":
        st, rho_s = fan.left, fan.rho_star_l
        sig = fan.left_wave.sigma
        gas = fan.left.gas
    else:
        st, rho_s = fan.right, fan.rho_star_r
        sig = fan.right_wave.sigma
        gas = fan.right.gas
    e1 = gas.internal_energy(st.rho, st.p)
    e2 = gas.internal_energy(rho_s, fan.pstar)
    E1 = e1 + 0.5 * st.u**2
    E2 = e2 + 0.5 * fan.ustar**2
    jumps = [
        (st.rho * st.u - rho_s * fan.ustar) - sig * (st.rho - rho_s),
        (st.rho * st.u**2 + st.p - rho_s * fan.ustar**2 - fan.pstar)
        - sig * (st.rho * st.u - rho_s * fan.ustar),
        (st.u * (st.rho * E1 + st.p) - fan.ustar * (rho_s * E2 + fan.pstar))
        - sig * (st.rho * E1 - rho_s * E2),
    ]
    scales = [
        abs(sig) * (st.rho + rho_s) + st.rho * abs(st.u) + rho_s * abs(fan.ustar),
        st.p + fan.pstar + st.rho * st.u**2 + rho_s * fan.ustar**2,
        abs(st.u) * (st.rho * abs(E1) + st.p) + abs(fan.ustar) * (rho_s * abs(E2) + fan.pstar)
        + abs(sig) * (st.rho * abs(E1) + rho_s * abs(E2)) + 1e-300,
    ]
    return [abs(j) / s for j, s in zip(jumps, scales)]


class TestShockConsistency:
    def test_sod_right_shock_rh(self):
        fan = solve_star(SOD_L, SOD_R)
        for r in shock_rh_residuals(fan, "right"):
            assert r < 1e-12

    def test_random_two_material_rh(self):
        rng = np.random.default_rng(12)
        checked = 0
        while checked < 60:
            L = side(rng.uniform(0.2, 3.0), rng.uniform(-1.5, 1.5), rng.uniform(0.2, 5.0),
                     rng.uniform(1.1, 3.0), rng.uniform(-0.05, 2.0))
            R = side(rng.uniform(0.2, 3.0), rng.uniform(-1.5, 1.5), rng.uniform(0.2, 5.0),
                     rng.uniform(1.1, 3.0), rng.uniform(-0.05, 2.0))
            try:
                fan = solve_star(L, R)
            except VacuumError:
                continue
            for wh, shock in (("left", fan.left_wave.is_shock),
                              ("right", fan.right_wave.is_shock)):
                if shock:
                    for r in shock_rh_residuals(fan, wh):
                        assert r < 1e-9
                    checked += 1


class TestSampling:
    def test_outside_waves(self):
        fan = solve_star(SOD_L, SOD_R)
        st, tag = sample(fan, -5.0)
        assert (st.rho, st.u, st.p) == (1.0, 0.0, 1.0) and tag == "left"
        st, tag = sample(fan, +5.0)
        assert (st.rho, st.u, st.p) == (0.125, 0.0, 0.1) and tag == "right"

    def test_contact_continuity(self):
        fan = solve_star(SOD_L, SOD_R)
        lo, tl = sample(fan, fan.ustar - 1e-12)
        hi, th = sample(fan, fan.ustar + 1e-12)
        assert lo.u == pytest.approx(hi.u, abs=1e-10)
        assert lo.p == pytest.approx(hi.p, abs=1e-10)
        assert lo.rho == pytest.approx(fan.rho_star_l, rel=1e-9)
        assert hi.rho == pytest.approx(fan.rho_star_r, rel=1e-9)
        assert (tl, th) == ("left", "right")

    def test_sod_at_zero(self):
        fan = solve_star(SOD_L, SOD_R)
        st, tag = sample(fan, 0.0)
        assert st.rho == pytest.approx(SOD_RHO_SL, rel=1e-10)
        assert st.u == pytest.approx(SOD_USTAR, rel=1e-10)
        assert st.p == pytest.approx(SOD_PSTAR, rel=1e-10)
        assert tag == "left"

    def test_riemann_invariants_inside_fan(self):
        fan = solve_star(SOD_L, SOD_R)
        g = 1.4
        head, tail = fan.left_wave.head, fan.left_wave.tail
        psi0 = SOD_L.u + 2.0 * SOD_L.c / (g - 1.0)
        k0 = (SOD_L.p) / SOD_L.rho**g
        for xi in np.linspace(head + 1e-9, tail - 1e-9, 64):
            st, _ = sample(fan, float(xi))
            c = math.sqrt(g * st.p / st.rho)
            assert st.u + 2 * c / (g - 1) == pytest.approx(psi0, rel=1e-12)
            assert st.p / st.rho**g == pytest.approx(k0, rel=1e-11)
            assert st.u - c == pytest.approx(xi, rel=1e-10, abs=1e-10)

    def test_sample_zero_matches_scalar(self):
        rng = np.random.default_rng(9)
        lanes = []
        for _ in range(300):
            L = (rng.uniform(0.2, 3.0), rng.uniform(-0.8, 0.8), rng.uniform(0.2, 5.0),
                 rng.uniform(1.1, 3.0), rng.uniform(0.0, 1.0))
            R = (rng.uniform(0.2, 3.0), rng.uniform(-0.8, 0.8), rng.uniform(0.2, 5.0),
                 rng.uniform(1.1, 3.0), rng.uniform(0.0, 1.0))
            lanes.append((L, R))
        arr = np.array([[*L, *R] for L, R in lanes])
        batch = solve_star_arrays(arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3], arr[:, 4],
                                  arr[:, 5], arr[:, 6], arr[:, 7], arr[:, 8], arr[:, 9])
        rho0, u0, p0, from_left, _, _ = sample_zero_arrays(batch)
        for i, (L, R) in enumerate(lanes):
            fan = solve_star(side(*L), side(*R))
            st, tag = sample(fan, 0.0)
            assert rho0[i] == pytest.approx(st.rho, rel=1e-12, abs=1e-13)
            assert u0[i] == pytest.approx(st.u, rel=1e-12, abs=1e-13)
            assert p0[i] == pytest.approx(st.p, rel=1e-12, abs=1e-13)
            assert bool(from_left[i]) == (tag == "left")
