import math

import numpy as np
import pytest

from spin2.dynamics import decompose, find_poles
from spin2.laplace import joint_rational, sigma_z_rational
from spin2.model import effective
from spin2.regimes import (crossover_temperatures, decoherence_rate,
                           equilibrium_full_joint, fictive_single_spin,
                           gamma_sigma, gamma_sigma_kondo,
                           gamma_sigma_large_v, gamma_sigma_locked,
                           gamma_sigma_tau, low_temp_poles_joint,
                           low_temp_poles_sigma, sbe_high_temp,
                           slow_sigma_joint, structured_bath_spectrum,
                           symmetric_joint_quartic)


class TestCrossovers:
    def test_three_crossovers_below_critical_coupling(self):
        rep = crossover_temperatures(effective(1.0, 1.0, 0.5, 0.1, 0.1))
        assert not rep.single_crossover
        assert len(rep.crossover_thetas) == 3
        t0, t1, t2 = rep.crossover_thetas
        assert t0 < t1 < t2
        # frozen from the bisection of the shifted-quartic discriminant
        assert t0 == pytest.approx(0.5794708256, rel=1e-6)
        assert t1 == pytest.approx(1.7788236457, rel=1e-6)
        # the incoherent/Kondo boundary is exactly bar_delta^2/v
        assert t2 == pytest.approx(2.0, rel=1e-8)

    def test_single_crossover_above_critical_coupling(self):
        rep = crossover_temperatures(effective(1.0, 1.0, 0.8, 0.1, 0.1))
        assert rep.single_crossover
        assert rep.crossover_thetas == pytest.approx([1.25], rel=1e-8)
        assert rep.v_critical == pytest.approx(1 / math.sqrt(2), rel=1e-12)

    @pytest.mark.parametrize("theta,expected", [
        (0.2, "two-oscillations"),
        (1.2, "one-oscillation-split-decrements"),
        (1.9, "incoherent-four-real"),
        (2.8, "kondo"),
    ])
    def test_classification_sequence(self, theta, expected):
        rep = crossover_temperatures(effective(1.0, 1.0, 0.5, theta, theta))
        assert rep.classification == expected

    def test_asymmetric_rejected(self):
        with pytest.raises(ValueError):
            crossover_temperatures(effective(1.0, 1.2, 0.5, 0.1, 0.1))

    def test_zero_coupling_rejected(self):
        with pytest.raises(ValueError):
            crossover_temperatures(effective(1.0, 1.0, 0.0, 0.1, 0.1))


class TestSymmetricJointQuartic:
    def test_roots_subset_of_sextic(self):
        eff = effective(1.0, 1.0, 0.5, 0.7, 0.7)
        quartic_roots = find_poles(symmetric_joint_quartic(eff))
        sextic_roots = find_poles(joint_rational(eff).denominator)
        for r in quartic_roots:
            assert np.min(np.abs(sextic_roots - r)) < 1e-9

    def test_cancelled_pair_has_zero_residue(self):
        eff = effective(1.0, 1.0, 0.5, 0.7, 0.7, tan_K1=0.2, tan_K2=0.2)
        rat = joint_rational(eff)
        lam = complex(-eff.theta1, eff.v)
        residue = rat.numerator(lam) / (lam * rat.denominator.deriv()(lam))
        assert abs(residue) < 1e-12


class TestLowTemperature:
    EFF = effective(1.0, 1.4, 0.7, 1e-4, 0.7e-4)

    def test_sigma_pole_real_parts(self):
        exact = find_poles(sigma_z_rational(self.EFF).denominator)
        for pole, _ in low_temp_poles_sigma(self.EFF):
            nearest = exact[np.argmin(np.abs(exact - pole))]
            assert nearest.real == pytest.approx(pole.real, rel=1e-2)
            assert nearest.imag == pytest.approx(pole.imag, abs=1e-6)

    def test_joint_pole_real_parts(self):
        exact = find_poles(joint_rational(self.EFF).denominator)
        for pole, _ in low_temp_poles_joint(self.EFF):
            nearest = exact[np.argmin(np.abs(exact - pole))]
            assert nearest.real == pytest.approx(pole.real, rel=1e-2)

    def test_sigma_amplitudes(self):
        dec = decompose(sigma_z_rational(self.EFF))
        for pole, amp in low_temp_poles_sigma(self.EFF):
            i = np.argmin(np.abs(dec.poles - pole))
            assert abs(dec.amplitudes[i] - amp) < 1e-3

    def test_joint_amplitudes(self):
        dec = decompose(joint_rational(self.EFF))
        for pole, amp in low_temp_poles_joint(self.EFF):
            i = np.argmin(np.abs(dec.poles - pole))
            assert abs(dec.amplitudes[i] - amp) < 1e-3


class TestRates:
    def test_gamma_sigma_matches_exact_root_deep_in_kondo(self):
        eff = effective(0.3, 0.4, 0.2, 20.0, 20.0)
        res = gamma_sigma(eff)
        assert res.regime == "incoherent"
        assert "relative deviation" in res.validity
        dev = float(res.validity.split()[2])
        assert dev < 1e-2

    def test_kondo_limit(self):
        eff = effective(0.3, 0.2, 0.1, 50.0, 50.0)
        assert gamma_sigma(eff).rate == pytest.approx(
            gamma_sigma_kondo(eff), rel=0.05)

    def test_large_v_limit(self):
        # needs v >> theta1 and bar_delta2^2 << theta1*(theta1+theta2)
        eff = effective(0.3, 0.1, 20.0, 1.0, 5.0)
        assert gamma_sigma(eff).rate == pytest.approx(
            gamma_sigma_large_v(eff), rel=0.05)

    def test_locked_limit(self):
        # v dominant with sizeable bar_delta2: joint flips with the reduced
        # splitting bar_delta1*bar_delta2/v
        eff = effective(0.5, 0.6, 8.0, 0.05, 0.05)
        assert gamma_sigma_locked(eff) == pytest.approx(
            (eff.bar_delta1 * eff.bar_delta2 / eff.v) ** 2
            / (eff.theta1 + eff.theta2), rel=0.01)
        assert gamma_sigma(eff).rate == pytest.approx(
            gamma_sigma_locked(eff), rel=0.05)

    def test_gamma_sigma_tau_regime_switch(self):
        hot = gamma_sigma_tau(effective(0.3, 0.4, 0.2, 10.0, 12.0))
        strong = gamma_sigma_tau(effective(0.3, 0.4, 5.0, 0.5, 0.6))
        assert hot.regime == "high-temperature-kondo"
        assert strong.regime == "large-coupling"
        assert hot.rate == pytest.approx(0.09 / 10 + 0.16 / 12, rel=1e-12)

    def test_gamma_sigma_tau_accurate_in_kondo(self):
        res = gamma_sigma_tau(effective(0.2, 0.3, 0.1, 30.0, 25.0))
        dev = float(res.validity.split()[2])
        assert dev < 1e-2


class TestSlowSigmaJoint:
    def test_collapses_to_biased_single_spin_at_zero_rate(self):
        eff = effective(1.0, 0.8, 0.5, 5.0, 0.9, tan_K2=0.12)
        slow = slow_sigma_joint(eff, 0.0)
        single_lin = sigma_z_rational(effective(
            0.8, 0.0, 0.5, 0.9, 0.0, tan_K1=math.atan(0.12)))
        for lam in (0.3, 0.9 + 0.4j, 2.0):
            assert slow(lam) == pytest.approx(single_lin(lam), rel=1e-12)

    def test_finite_rate_shifts_relaxation(self):
        eff = effective(1.0, 0.8, 0.5, 5.0, 0.9)
        g = 0.05
        rat = slow_sigma_joint(eff, g)
        roots = find_poles(rat.denominator)
        real = roots[np.abs(roots.imag) < 1e-12].real
        # the slow mode relaxes at a rate set by both spins
        assert real.size >= 1
        assert np.all(real < 0)


class TestSpinBosonEnvironment:
    def test_requires_undamped_sigma(self):
        with pytest.raises(ValueError):
            sbe_high_temp(effective(0.2, 1.0, 0.1, 0.5, 5.0))
        with pytest.raises(ValueError):
            sbe_high_temp(effective(0.2, 1.0, 0.1, 0.0, 0.0))

    def test_cubic_roots_approach_leading_order(self):
        errs = []
        for scale in (1.0, 2.0, 4.0):
            eff = effective(0.2, 1.0, 0.1, 0.0, 5.0 * scale)
            res = sbe_high_temp(eff)
            exact = find_poles(res.rational.denominator)
            errs.append(max(np.min(np.abs(exact - p)) for p in res.poles))
        # leading-order error shrinks like gamma_tau^2
        assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.3)
        assert errs[1] / errs[2] == pytest.approx(4.0, rel=0.3)

    def test_fictive_spin_differs_only_in_damping_coefficient(self):
        eff = effective(0.2, 1.0, 0.1, 0.0, 5.0)
        res = sbe_high_temp(eff)
        theta_tilde = res.gamma_tau / 2.0
        fict = fictive_single_spin(0.2, 0.1, theta_tilde)
        # identical damping coefficient at theta_tilde = gamma_tau/2, but the
        # static numerator term picks up theta_tilde^2
        assert fict.denominator.coef[2] == pytest.approx(
            res.rational.denominator.coef[2], rel=1e-12)
        assert fict.numerator.coef[1] == pytest.approx(
            res.rational.numerator.coef[1], rel=1e-12)
        assert fict.numerator.coef[0] == pytest.approx(
            0.1**2 + theta_tilde**2, rel=1e-12)
        assert res.rational.numerator.coef[0] == pytest.approx(0.1**2,
                                                               rel=1e-12)

    def test_spectrum_peak_and_decoherence_identity(self):
        # narrow resonance: peak sits at the renormalized tau frequency
        eff = effective(0.4, 1.0, 0.05, 0.0, 0.2)
        w = np.linspace(0.01, 2.0, 2000)
        s = structured_bath_spectrum(w, eff)
        assert w[np.argmax(s)] == pytest.approx(eff.bar_delta2, abs=0.05)
        # gamma_dec = (pi/4) * S_tau(delta1)
        rate = decoherence_rate(eff).rate
        assert rate == pytest.approx(
            math.pi / 4.0 * structured_bath_spectrum(eff.bar_delta1, eff),
            rel=1e-12)

    def test_decoherence_rate_matches_pole_decay_at_weak_v(self):
        ratios = []
        for v in (0.1, 0.05, 0.025):
            eff = effective(0.4, 1.0, v, 0.0, 0.8)
            roots = find_poles(sigma_z_rational(eff).denominator)
            osc = roots[roots.imag > 0]
            pole = osc[np.argmin(np.abs(osc.imag - eff.bar_delta1))]
            ratios.append(-pole.real / decoherence_rate(eff).rate)
        errs = [abs(r - 1.0) for r in ratios]
        assert errs[0] > errs[1] > errs[2]
        assert errs[2] < 5e-3


class TestEquilibriumFullJoint:
    def test_high_temperature_limit(self):
        eff = effective(1.0, 1.2, 0.6, 0.1, 0.1)
        beta = 1e-3
        # tanh(beta x/2) -> beta x/2 gives v*beta/2 = v/(2T)
        assert equilibrium_full_joint(eff, beta) == pytest.approx(
            0.6 * beta / 2.0, rel=1e-4)

    def test_degenerate_branch_is_continuous(self):
        import dataclasses

        eff = effective(1.0, 1.2, 0.6, 0.0, 0.0)
        deg = dataclasses.replace(eff, bar_small_delta=eff.bar_Omega)
        close = dataclasses.replace(
            eff, bar_small_delta=eff.bar_Omega * (1.0 - 1e-5))
        beta = 2.0
        assert equilibrium_full_joint(deg, beta) == pytest.approx(
            equilibrium_full_joint(close, beta), rel=1e-4)

    def test_negative_beta_rejected(self):
        with pytest.raises(ValueError):
            equilibrium_full_joint(effective(1.0, 1.0, 0.5, 0, 0), -1.0)
