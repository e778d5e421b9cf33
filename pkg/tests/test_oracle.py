import numpy as np
import pytest

from spin2.dynamics import decompose, series
from spin2.laplace import sigma_z_rational
from spin2.model import effective
from spin2.oracle import (BASIS_LABELS, compare_with_analytic, default_step,
                          dephasing_generator, initial_state, integrate)

from conftest import draw_effective


class TestGenerator:
    def test_shape_and_realness(self):
        g = dephasing_generator(effective(1.0, 1.5, 0.8, 0.3, 0.6))
        assert g.shape == (15, 15)
        assert g.dtype == float

    def test_no_damping_is_antisymmetric(self):
        # pure Hamiltonian flow preserves the Bloch norm
        g = dephasing_generator(effective(1.0, 1.5, 0.8, 0.0, 0.0))
        assert np.allclose(g + g.T, 0.0, atol=1e-13)

    def test_single_spin_block(self):
        # decoupled spin 1 without damping: closed x/y/z rotation block
        eff = effective(1.0, 0.0, 0.0, 0.0, 0.5)
        g = dephasing_generator(eff)
        iy, iz = BASIS_LABELS.index("yi"), BASIS_LABELS.index("zi")
        assert g[iz, iy] == pytest.approx(-1.0)
        assert g[iy, iz] == pytest.approx(1.0)


class TestIntegrate:
    def test_initial_state(self):
        s = initial_state()
        assert s["zi"] == 1.0 and s["iz"] == 1.0 and s["zz"] == 1.0
        assert np.sum(np.abs(s.vector)) == 3.0

    def test_matches_pole_sum(self):
        eff = effective(1.0, 1.5, 0.8, 0.3, 0.6)
        t = np.linspace(0.0, 20.0, 41)
        out = integrate(eff, t)
        analytic = series(decompose(sigma_z_rational(eff)), t)
        assert np.max(np.abs(out["sigma_z"].values - analytic.values)) < 1e-8

    def test_grid_validation(self):
        eff = effective(1.0, 1.0, 0.5, 0.1, 0.1)
        with pytest.raises(ValueError):
            integrate(eff, np.array([1.0, 0.5]))
        with pytest.raises(ValueError):
            integrate(eff, np.array([0.0, 1.0]), step=-1.0)

    def test_default_step_scales(self):
        slow = effective(1.0, 1.0, 0.5, 0.1, 0.1)
        fast = effective(10.0, 10.0, 0.5, 0.1, 0.1)
        assert default_step(fast) < default_step(slow)

    def test_coarser_step_converges(self):
        eff = effective(1.0, 1.0, 0.5, 0.4, 0.4)
        t = np.linspace(0.0, 10.0, 11)
        fine = integrate(eff, t)["sigma_z"].values
        coarse = integrate(eff, t, step=0.05)["sigma_z"].values
        assert np.max(np.abs(fine - coarse)) < 1e-5


class TestComparison:
    def test_dephasing_sector_agreement(self, rng):
        for _ in range(5):
            eff = draw_effective(rng, with_phase=False, theta_max=2.0)
            t = np.linspace(0.0, 20.0, 21)
            devs = compare_with_analytic(eff, t)
            assert set(devs) == {"sigma_z", "tau_z", "sigma_z_tau_z"}
            assert max(devs.values()) < 1e-8

    def test_phase_terms_dropped(self):
        # the Lindblad oracle has no odd-in-v phase sector, so the finite
        # tan-K parameters must not affect the comparison
        base = effective(1.0, 1.5, 0.8, 0.3, 0.6)
        phased = effective(1.0, 1.5, 0.8, 0.3, 0.6, tan_K1=0.4, tan_K2=0.4)
        t = np.linspace(0.0, 10.0, 11)
        a = compare_with_analytic(base, t)
        b = compare_with_analytic(phased, t)
        for k in a:
            assert a[k] == pytest.approx(b[k], abs=1e-12)
