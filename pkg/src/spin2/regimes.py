"""Regime analysis: crossover temperatures, asymptotic rates, reductions.

The coherent/incoherent structure of <sigma_z> for the symmetric system is
read off a shifted pole polynomial: with bar_delta1 = bar_delta2 and
theta1 = theta2 = theta, the quartic D1(x - theta) is even in x, so the pole
structure is governed by a quadratic in y = x^2 with

    discriminant > 0, y roots negative  ->  two damped oscillations
    discriminant < 0                    ->  one frequency, split decrements
    discriminant > 0, y roots positive  ->  four real poles
    product of y roots negative         ->  Kondo arrangement

Crossover temperatures are the sign changes of the discriminant (two zeros)
and of the y-root product (one zero), located by bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.polynomial import Polynomial
from scipy.optimize import brentq

from .dynamics import DegeneratePolesError, decompose, find_poles
from .laplace import RationalLaplace, joint_rational, sigma_z_rational
from .model import EffectiveParams, effective

Classification = Literal[
    "two-oscillations",
    "one-oscillation-split-decrements",
    "incoherent-four-real",
    "kondo",
]

_CROSSOVER_XTOL = 1e-9
_SYMMETRY_RTOL = 1e-9


@dataclass(frozen=True)
class RegimeReport:
    classification: Classification
    crossover_thetas: tuple[float, ...]
    v_critical: float
    single_crossover: bool
    pole_table: tuple[np.ndarray, np.ndarray | None]


@dataclass(frozen=True)
class RateResult:
    rate: float
    regime: str
    validity: str


def _require_symmetric(eff: EffectiveParams) -> None:
    if not eff.is_symmetric:
        raise ValueError("symmetric system required (bar_delta1 = bar_delta2, theta1 = theta2)")


def _shifted_even_quartic(bar_delta: float, v: float, theta: float):
    """Coefficients (p, q) of x^4 + p x^2 + q = D1(x - theta)."""
    eff = effective(bar_delta, bar_delta, v, theta, theta)
    den = sigma_z_rational(eff).denominator
    shifted = den(Polynomial([-theta, 1.0]))
    c = shifted.coef
    scale = float(np.max(np.abs(c)))
    if abs(c[1]) > 1e-9 * scale or abs(c[3]) > 1e-9 * scale:
        raise RuntimeError("shifted quartic not even; symmetric reduction violated")
    return float(c[2]), float(c[0])


def _classify(p: float, q: float) -> Classification:
    if q < 0.0:
        return "kondo"
    disc = p * p - 4.0 * q
    if disc < 0.0:
        return "one-oscillation-split-decrements"
    if p < 0.0:
        return "incoherent-four-real"
    return "two-oscillations"


def crossover_temperatures(eff: EffectiveParams) -> RegimeReport:
    """Crossover temperatures of <sigma_z> for the symmetric system.

    For v below the critical coupling bar_delta/sqrt(2) there are three
    ordered crossovers theta0* <= theta1* <= theta2*; above it there is a
    single crossover directly into the regime with two real poles.
    """
    _require_symmetric(eff)
    bar_delta, v, theta = eff.bar_delta1, eff.v, eff.theta1
    if bar_delta <= 0.0 or v <= 0.0:
        raise ValueError("crossover analysis needs bar_delta > 0 and v > 0")
    v_critical = bar_delta / math.sqrt(2.0)

    def disc(th: float) -> float:
        p, q = _shifted_even_quartic(bar_delta, v, th)
        return p * p - 4.0 * q

    def qfun(th: float) -> float:
        return _shifted_even_quartic(bar_delta, v, th)[1]

    theta_max = 1.5 * max(3.0 * bar_delta, bar_delta**2 / v)
    grid = np.linspace(1e-9 * bar_delta, theta_max, 800)
    xtol = _CROSSOVER_XTOL * bar_delta

    disc_vals = np.array([disc(th) for th in grid])
    disc_zeros = [
        brentq(disc, grid[i], grid[i + 1], xtol=xtol)
        for i in range(len(grid) - 1)
        if disc_vals[i] * disc_vals[i + 1] < 0
    ]
    q_vals = np.array([qfun(th) for th in grid])
    q_zeros = [
        brentq(qfun, grid[i], grid[i + 1], xtol=xtol)
        for i in range(len(grid) - 1)
        if q_vals[i] * q_vals[i + 1] < 0
    ]

    single = len(disc_zeros) < 2
    if single:
        crossovers = tuple(q_zeros[:1])
    else:
        crossovers = tuple(sorted(disc_zeros[:2] + q_zeros[:1]))

    p, q = _shifted_even_quartic(bar_delta, v, theta)
    rat = sigma_z_rational(eff)
    try:
        dec = decompose(rat)
        table = (dec.poles, dec.amplitudes)
    except DegeneratePolesError:
        table = (find_poles(rat.denominator), None)

    return RegimeReport(
        classification=_classify(p, q),
        crossover_thetas=crossovers,
        v_critical=v_critical,
        single_crossover=single,
        pole_table=table,
    )


def symmetric_joint_quartic(eff: EffectiveParams) -> Polynomial:
    """Reduced pole polynomial of <sigma_z tau_z> for the symmetric system.

    Its four roots are sextic roots of the full D; the two remaining sextic
    roots (-theta +- i v) carry vanishing amplitudes.
    """
    _require_symmetric(eff)
    theta, d2 = eff.theta1, eff.bar_delta1**2
    op2 = eff.bar_Omega_plus**2
    return Polynomial([
        4.0 * theta**2 * d2,
        2.0 * theta * (op2 + theta**2),
        op2 + 5.0 * theta**2,
        4.0 * theta,
        1.0,
    ])


# ---------------------------------------------------------------------------
# low-temperature expansions (O(theta) poles and leading amplitudes)


def low_temp_poles_sigma(eff: EffectiveParams) -> list[tuple[complex, complex]]:
    """O(theta) poles and leading amplitudes of <sigma_z>.

    Valid for theta1, theta2 well below the eigenfrequency splitting; the
    real parts vary linearly with temperature.
    """
    o2 = eff.bar_Omega**2
    s2 = eff.bar_small_delta**2
    d1, d2, v2 = eff.bar_delta1**2, eff.bar_delta2**2, eff.v**2
    gap = o2 - s2
    re_low = (
        -(o2 + d1 - 2.0 * s2) / (2.0 * gap) * eff.theta1
        - (o2 - d2) / (2.0 * gap) * eff.theta2
    )
    re_high = (
        -(2.0 * o2 - s2 - d1) / (2.0 * gap) * eff.theta1
        - (d2 - s2) / (2.0 * gap) * eff.theta2
    )
    a_low = 0.5 * (d2 + v2 - s2) / gap
    a_high = 0.5 * (o2 - v2 - d2) / gap
    w_low, w_high = eff.bar_small_delta, eff.bar_Omega
    return [
        (complex(re_low, w_low), complex(a_low)),
        (complex(re_low, -w_low), complex(a_low)),
        (complex(re_high, w_high), complex(a_high)),
        (complex(re_high, -w_high), complex(a_high)),
    ]


def low_temp_poles_joint(eff: EffectiveParams) -> list[tuple[complex, complex]]:
    """O(theta) poles and leading amplitudes of <sigma_z tau_z>.

    Two damped oscillations at the barred eigenfrequencies plus two purely
    relaxational contributions; the equilibrium constant entering B5, B6 is
    taken from the exact rational form, N(0)/D(0).
    """
    o2 = eff.bar_Omega**2
    s2 = eff.bar_small_delta**2
    d1, d2, v2 = eff.bar_delta1**2, eff.bar_delta2**2, eff.v**2
    gap = o2 - s2
    ths = eff.theta1 + eff.theta2

    rat = joint_rational(eff)
    eq = float(rat.numerator(0.0) / rat.denominator(0.0))

    lam5 = -((o2 - d1) * eff.theta1 + (o2 - d2) * eff.theta2) / gap
    lam6 = -((d1 - s2) * eff.theta1 + (d2 - s2) * eff.theta2) / gap
    b12 = 0.25 * (1.0 - v2 / eff.bar_Omega_plus**2)
    b34 = 0.25 * (1.0 - v2 / eff.bar_Omega_minus**2)
    b5 = v2 * s2 / gap**2 + s2 * eq / gap
    b6 = v2 * o2 / gap**2 - o2 * eq / gap
    wp, wm = eff.bar_Omega_plus, eff.bar_Omega_minus
    return [
        (complex(-ths / 2.0, wp), complex(b12)),
        (complex(-ths / 2.0, -wp), complex(b12)),
        (complex(-ths / 2.0, wm), complex(b34)),
        (complex(-ths / 2.0, -wm), complex(b34)),
        (complex(lam5), complex(b5)),
        (complex(lam6), complex(b6)),
    ]


# ---------------------------------------------------------------------------
# incoherent-regime relaxation rates


def _smallest_real_rate(den: Polynomial) -> float | None:
    roots = find_poles(den)
    real = roots[np.abs(roots.imag) == 0.0]
    if real.size == 0:
        return None
    return float(-real[np.argmin(np.abs(real.real))].real)


def _validity_against_root(rate: float, den: Polynomial) -> str:
    exact = _smallest_real_rate(den)
    if exact is None:
        return "outside regime: pole polynomial has no real root"
    dev = abs(rate - exact) / exact
    return f"relative deviation {dev:.3e} from exact smallest real root rate {exact:.6g}"


def gamma_sigma(eff: EffectiveParams) -> RateResult:
    """Closed-form incoherent relaxation rate of <sigma_z>."""
    th1, th2 = eff.theta1, eff.theta2
    ths = th1 + th2
    rate = (
        eff.bar_delta1**2 / (eff.v**2 + th1**2)
        * (eff.bar_delta2**2 + th1 * ths) / ths
    )
    validity = _validity_against_root(rate, sigma_z_rational(eff).denominator)
    return RateResult(rate=rate, regime="incoherent", validity=validity)


def gamma_sigma_kondo(eff: EffectiveParams) -> float:
    """Kondo limit theta1 >> v, bar_delta2: rate bar_delta1^2/theta1."""
    return eff.bar_delta1**2 / eff.theta1


def gamma_sigma_large_v(eff: EffectiveParams) -> float:
    """Large coupling with bar_delta2 << theta: (bar_delta1^2/v^2) theta1."""
    return eff.bar_delta1**2 / eff.v**2 * eff.theta1


def gamma_sigma_locked(eff: EffectiveParams) -> float:
    """Locked spins (v >> bar_delta, bar_delta2 >> theta): joint Kondo-like
    relaxation with effective tunneling bar_small_delta."""
    return eff.bar_small_delta**2 / (eff.theta1 + eff.theta2)


def gamma_sigma_tau(eff: EffectiveParams) -> RateResult:
    """Incoherent relaxation rate of <sigma_z tau_z>.

    Both asymptotic forms receive independent single-spin contributions; the
    large-coupling form applies for v dominant, the Kondo-like form for
    dominant temperatures.
    """
    th1, th2 = eff.theta1, eff.theta2
    d1, d2 = eff.bar_delta1**2, eff.bar_delta2**2
    if eff.v > max(th1, th2):
        rate = d1 / eff.v**2 * th1 + d2 / eff.v**2 * th2
        regime = "large-coupling"
    else:
        rate = d1 / th1 + d2 / th2
        regime = "high-temperature-kondo"
    validity = _validity_against_root(rate, joint_rational(eff).denominator)
    return RateResult(rate=rate, regime=regime, validity=validity)


def slow_sigma_joint(eff: EffectiveParams, gamma_sigma_rate: float) -> RationalLaplace:
    """<sigma_z tau_z(lambda)> when the sigma spin is Kondo-slow.

    Cubic reduced form; at gamma_sigma_rate = 0 it collapses to the biased
    single-spin white-noise solution for the tau spin.
    """
    th2, v = eff.theta2, eff.v
    d2 = eff.bar_delta2**2
    pi_k2 = math.atan(eff.tan_K2)
    g = gamma_sigma_rate
    num = Polynomial([pi_k2 * v * d2, v * v + th2 * th2, 2.0 * th2, 1.0])
    den = Polynomial([
        d2 * th2 + g * (v * v + th2 * th2),
        d2 + v * v + th2 * th2 + 3.0 * g * th2,
        2.0 * (th2 + g),
        1.0,
    ])
    return RationalLaplace(num, den)


# ---------------------------------------------------------------------------
# spin-boson environment (tau spin + bath 2 seen by the sigma spin)


@dataclass(frozen=True)
class SpinBosonEnvironmentResult:
    rational: RationalLaplace
    poles: np.ndarray
    amplitudes: np.ndarray
    gamma_tau: float


def sbe_high_temp(eff: EffectiveParams) -> SpinBosonEnvironmentResult:
    """<sigma_z(lambda)> with the tau spin in the Kondo regime.

    Requires theta1 = 0 (no bath on the sigma spin, so bar_delta1 is the bare
    tunneling coupling) and theta2 large; gamma_tau = bar_delta2^2/theta2 is
    the tau relaxation rate.  Returns the cubic rational form together with
    the leading-order poles and amplitudes.
    """
    if eff.theta1 != 0.0:
        raise ValueError("spin-boson-environment reduction requires theta1 = 0")
    if eff.theta2 <= 0.0:
        raise ValueError("spin-boson-environment reduction requires theta2 > 0")
    delta1, v = eff.bar_delta1, eff.v
    gamma_tau = eff.bar_delta2**2 / eff.theta2
    w2 = v * v + delta1 * delta1
    rat = RationalLaplace(
        Polynomial([v * v, gamma_tau, 1.0]),
        Polynomial([delta1**2 * gamma_tau, w2, gamma_tau, 1.0]),
        prefactor_one_over_lambda=False,
    )
    w = math.sqrt(w2)
    osc_rate = v * v * gamma_tau / (2.0 * w2)
    poles = np.array([
        complex(-osc_rate, w),
        complex(-osc_rate, -w),
        complex(-delta1**2 * gamma_tau / w2),
    ])
    amps = np.array([
        complex(delta1**2 / (2.0 * w2)),
        complex(delta1**2 / (2.0 * w2)),
        complex(v * v / w2),
    ])
    return SpinBosonEnvironmentResult(rat, poles, amps, gamma_tau)


def fictive_single_spin(delta1: float, v: float, theta_tilde: float) -> RationalLaplace:
    """Bias-symmetric part of a fictive single biased spin at scaled
    temperature theta_tilde; comparison partner for the high-temperature
    spin-boson-environment form (same cubic except the lambda^2 damping
    coefficient, 2*theta_tilde instead of gamma_tau)."""
    return RationalLaplace(
        Polynomial([v * v + theta_tilde**2, 2.0 * theta_tilde, 1.0]),
        Polynomial([
            delta1**2 * theta_tilde,
            delta1**2 + v * v + theta_tilde**2,
            2.0 * theta_tilde,
            1.0,
        ]),
        prefactor_one_over_lambda=False,
    )


def structured_bath_spectrum(omega, eff: EffectiveParams):
    """Gaussian-approximated power spectrum of the spin-boson environment:
    a resonance of width theta2 at the renormalized tau frequency."""
    w = np.asarray(omega, dtype=float)
    d2 = eff.bar_delta2**2
    val = (2.0 * eff.theta2 / math.pi) * eff.v**2 * d2 / (
        (d2 - w**2) ** 2 + eff.theta2**2 * w**2
    )
    return val if val.ndim else float(val)


def decoherence_rate(eff: EffectiveParams) -> RateResult:
    """One-boson-exchange decoherence rate of the sigma spin, pi/4 times the
    structured-bath spectrum at the sigma frequency."""
    delta1 = eff.bar_delta1
    d2 = eff.bar_delta2**2
    rate = eff.v**2 * d2 * eff.theta2 / (
        2.0 * ((d2 - delta1**2) ** 2 + eff.theta2**2 * delta1**2)
    )
    validity = "weak-v one-boson-exchange; compare the decay rate of the "\
        "sigma-frequency pole pair of the exact quartic"
    return RateResult(rate=rate, regime="one-boson-exchange", validity=validity)


# ---------------------------------------------------------------------------
# beyond-white-noise equilibrium


def equilibrium_full_joint(eff: EffectiveParams, beta: float) -> float:
    """Joint equilibrium value valid below the white-noise window (K << 1).

    Reduces to v/(2T) for temperatures above the eigenfrequencies; the
    degenerate case bar_Omega = bar_small_delta is handled by the analytic
    limit of the bracket.
    """
    if beta < 0:
        raise ValueError("beta must be non-negative")
    om, de = eff.bar_Omega, eff.bar_small_delta
    gap = om * om - de * de
    if gap < 1e-12 * max(om * om, 1.0):
        # limit of [f(om) - f(de)]/(om^2 - de^2) with f(x) = x tanh(beta x/2)
        th = math.tanh(beta * om / 2.0)
        return eff.v * (th + (beta * om / 2.0) * (1.0 - th * th)) / (2.0 * om)
    return eff.v / gap * (
        om * math.tanh(beta * om / 2.0) - de * math.tanh(beta * de / 2.0)
    )
