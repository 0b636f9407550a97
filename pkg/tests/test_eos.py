"""EOS layer tests: closed forms, analytic derivatives, and reductions.

Expected numbers tagged "frozen" were computed before the implementation
with independent arithmetic scripts (direct evaluation of the reference
curves, RK4 isentrope integration, bisection).
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from realgas.eos import CochranChan, EosModel, Jwl, Polytropic, Stiffened
from realgas.errors import ConvexityError, DegenerateEosError, EosDomainError

# Standard materials (benchmark tables)
TNT = Jwl(rho0=1.84, e0=0.0, Gamma=0.25, A=8.545, B=0.205, R1=4.6, R2=1.35)
NITROMETHANE = CochranChan(
    rho0=1.134, e0=0.0, Gamma=1.19, A=8192.0, B=1508.0, eps1=4.53, eps2=1.42
)
AIR = Polytropic(gamma=1.4)
WATERISH = Stiffened(gamma=4.4, p_inf=0.006)

ALL_MODELS = [AIR, WATERISH, TNT, NITROMETHANE]

ULP = np.finfo(float).eps


class TestKappaChi:
    def test_polytropic_closed_form(self):
        kappa, chi, dkappa, dchi = AIR.kappa_chi(1.0)
        assert kappa == pytest.approx(0.4, rel=1e-15)
        assert chi == 0.0
        assert dkappa == pytest.approx(0.4, rel=1e-15)
        assert dchi == 0.0

    def test_cochran_chan_reference_collapse_at_rho0(self):
        # at rho = rho0 both power laws are 1 and e_ref = -e0 = 0
        _, chi, _, _ = NITROMETHANE.kappa_chi(1.134)
        assert chi == pytest.approx(8192.0 - 1508.0, rel=1e-14)

    def test_jwl_tnt_chi_at_rho0(self):
        # frozen: direct arithmetic on the JWL curves at rho0 = 1.84
        _, chi, _, _ = TNT.kappa_chi(1.84)
        assert chi == pytest.approx(0.12452756708526824, rel=1e-14)

    def test_rejects_nonpositive_density(self):
        for model in ALL_MODELS:
            with pytest.raises(EosDomainError):
                model.kappa_chi(0.0)
            with pytest.raises(EosDomainError):
                model.kappa_chi(-1.0)

    @pytest.mark.parametrize("model", ALL_MODELS, ids=lambda m: type(m).__name__)
    def test_derivatives_match_finite_differences(self, model):
        for rho in (0.4, 0.9, 1.134, 1.84, 2.7):
            h = 1e-6 * rho
            km, cm = model.kappa_chi(rho - h)[:2]
            kp, cp = model.kappa_chi(rho + h)[:2]
            _, _, dkappa, dchi = model.kappa_chi(rho)
            fd_k = (kp - km) / (2 * h)
            fd_c = (cp - cm) / (2 * h)
            assert dkappa == pytest.approx(fd_k, rel=1e-6)
            scale = max(abs(fd_c), abs(dchi), 1e-12)
            assert abs(dchi - fd_c) / scale < 1e-6

    def test_vectorized_matches_scalar(self):
        rho = np.array([0.5, 1.0, 1.84, 2.5])
        vec = TNT.kappa_chi(rho)
        for i, r in enumerate(rho):
            scal = TNT.kappa_chi(float(r))
            for a, b in zip(vec, scal):
                assert a[i] == pytest.approx(float(b), rel=1e-15)


class TestPressureEnergy:
    def test_polytropic_pressure(self):
        assert AIR.pressure(1.0, 2.5) == pytest.approx(1.0, rel=1e-15)
        assert AIR.internal_energy(1.0, 1.0) == pytest.approx(2.5, rel=1e-15)

    def test_stiffened_pressure_closed_form(self):
        # p = 3.4 * 0.1 - 4.4 * 0.006
        assert WATERISH.pressure(1.0, 0.1) == pytest.approx(0.3136, rel=1e-14)

    def test_jwl_tnt_pressure(self):
        # frozen: 0.46 (0.5 - e_ref(rho0)) + p_ref(rho0)
        assert TNT.pressure(1.84, 0.5) == pytest.approx(0.3545275670852682, rel=1e-14)

    def test_cochran_chan_energy(self):
        # frozen: (2e4 - 6684) / (1.19 * 1.134)
        e = NITROMETHANE.internal_energy(1.134, 2e4)
        assert e == pytest.approx(9867.650764009308, rel=1e-14)

    @pytest.mark.parametrize("model", ALL_MODELS, ids=lambda m: type(m).__name__)
    def test_round_trip_within_ulps(self, model):
        # bound is 4 ulps of the computation scale: chi can dominate p by
        # orders of magnitude (Cochran-Chan), making 4 ulps of p unreachable
        rng = np.random.default_rng(7)
        rho = rng.uniform(0.3, 3.0, 200)
        p = rng.uniform(0.05, 30.0, 200)
        chi = model.kappa_chi(rho)[1]
        back = model.pressure(rho, model.internal_energy(rho, p))
        assert np.all(np.abs(back - p) <= 4 * ULP * np.maximum(np.abs(p), np.abs(chi)))

    def test_round_trip_at_benchmark_pressures(self):
        # at its benchmark pressure scale (2e4 Mbar) the C-C round trip is
        # 4 ulps of p itself
        rng = np.random.default_rng(8)
        rho = rng.uniform(0.4, 2.0, 100)
        p = rng.uniform(1e4, 3e4, 100)
        back = NITROMETHANE.pressure(rho, NITROMETHANE.internal_energy(rho, p))
        assert np.all(np.abs(back - p) <= 4 * ULP * np.abs(p))


class TestSoundSpeed:
    def test_polytropic_reduction(self):
        assert AIR.sound_speed(1.0, 1.0) == pytest.approx(math.sqrt(1.4), rel=1e-15)

    def test_stiffened_reduction_exact(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            rho = rng.uniform(0.2, 4.0)
            p = rng.uniform(0.01, 20.0)
            direct = math.sqrt(4.4 * (p + 0.006) / rho)
            assert WATERISH.sound_speed(rho, p) == pytest.approx(direct, abs=0.0)
            # the general formula agrees with the reduction to a few ulps
            generic = EosModel.sound_speed_sq(WATERISH, rho, p)
            assert abs(generic - direct**2) <= 8 * ULP * direct**2

    def test_jwl_value_and_isentrope_consistency(self):
        # frozen: analytic formula at the TNT state (rho=1, p=0.5), cross-checked
        # pre-build by centered differencing of p along an RK4 isentrope
        c2 = TNT.sound_speed(1.0, 0.5) ** 2
        assert c2 == pytest.approx(0.6591022408017423, rel=1e-13)
        assert c2 == pytest.approx(0.6591022414154102, rel=1e-8)  # FD cross-check

    def test_convexity_violation_raises(self):
        # deep-tension stiffened state: p + p_inf < 0
        tense = Stiffened(gamma=2.0, p_inf=-1.0)
        with pytest.raises(ConvexityError):
            tense.sound_speed(1.0, 0.5)


class TestStiffenedFit:
    def test_fixed_point_on_stiffened(self):
        for rho0 in (0.3, 1.0, 2.7):
            fit = WATERISH.stiffened_fit(rho0)
            assert fit.gamma == 4.4
            assert fit.p_inf == 0.006

    def test_generic_formula_consistent_with_fixed_point(self):
        for rho0 in (0.3, 0.7, 1.0, 2.7):
            gamma, p_inf = EosModel.stiffened_fit_arrays(WATERISH, rho0)
            assert float(gamma) == pytest.approx(4.4, rel=4 * ULP)
            assert float(p_inf) == pytest.approx(0.006, rel=16 * ULP)

    def test_jwl_gamma_is_density_independent(self):
        for rho0 in (0.5, 1.84, 3.0):
            assert TNT.stiffened_fit(rho0).gamma == pytest.approx(1.25, rel=1e-15)

    def test_jwl_tnt_pinf_at_rho0(self):
        # frozen: -chi(1.84) / 1.25
        fit = TNT.stiffened_fit(1.84)
        assert fit.p_inf == pytest.approx(-0.0996220536682146, rel=1e-14)

    def test_mu2_cached(self):
        fit = WATERISH.stiffened_fit(1.0)
        assert fit.mu2 == (4.4 - 1.0) / (4.4 + 1.0)
        assert 0.0 < fit.mu2 < 1.0

    def test_degenerate_gamma_rejected(self):
        with pytest.raises(DegenerateEosError):
            Polytropic(gamma=1.0)
        with pytest.raises(DegenerateEosError):
            Jwl(rho0=1.0, e0=0.0, Gamma=0.0, A=1.0, B=0.1, R1=4.0, R2=1.0)


class TestFundamentalDerivative:
    def test_polytropic_constant(self):
        report = AIR.convexity_check((0.5, 2.0), (0.5, 2.0), samples=3)
        assert report.minimum == pytest.approx(1.2, rel=1e-15)
        assert report.ok and not report.violations

    def test_stiffened_constant(self):
        report = WATERISH.convexity_check((0.5, 2.0), (0.5, 2.0), samples=3)
        assert report.minimum == pytest.approx(2.7, rel=1e-15)

    def test_jwl_tnt_positive_over_benchmark_window(self):
        # frozen: pre-build sweep found min ~ 1.1256 at the (0.5, 12.0) corner
        report = TNT.convexity_check((0.5, 2.5), (0.1, 12.0), samples=9)
        assert report.ok and not report.violations
        assert report.minimum == pytest.approx(1.1256, rel=2e-2)

    def test_bad_ranges_rejected(self):
        with pytest.raises(ValueError):
            AIR.convexity_check((1.0, 0.5), (0.1, 1.0))
        with pytest.raises(ValueError):
            AIR.convexity_check((0.5, 1.0), (0.1, 1.0), samples=1)


class TestReductionPolytropicStiffened:
    """A polytropic gas must behave exactly like a stiffened gas with p_inf = 0."""

    def test_all_operations_agree(self):
        poly = Polytropic(gamma=1.67)
        stiff = Stiffened(gamma=1.67, p_inf=0.0)
        rng = np.random.default_rng(11)
        rho = rng.uniform(0.2, 4.0, 64)
        p = rng.uniform(0.05, 9.0, 64)
        e = rng.uniform(0.1, 5.0, 64)
        assert np.array_equal(poly.pressure(rho, e), stiff.pressure(rho, e))
        assert np.array_equal(poly.internal_energy(rho, p), stiff.internal_energy(rho, p))
        assert np.array_equal(poly.sound_speed(rho, p), stiff.sound_speed(rho, p))
        for r in rho[:8]:
            fp = poly.stiffened_fit(float(r))
            fs = stiff.stiffened_fit(float(r))
            assert (fp.gamma, fp.p_inf) == (fs.gamma, fs.p_inf)
