"""Analytic Laplace-space solutions for the three longitudinal observables.

Two equivalent representations are provided:

* closed-form kernels (irreducible path-segment sums) that enter the
  resummed expressions ``(1/lambda) * (1 + K_odd/lambda) / (1 - K_even/lambda)``,
* explicit rational functions ``(1/lambda) * N(lambda) / D(lambda)`` with
  real polynomial coefficients.

The rational forms are the primary representation (their coefficients feed
the root finder in :mod:`spin2.dynamics`); the kernel forms are kept for
cross-validation.  Both are built from the same intermediate cubics

    F1 = [(l+th1)^2 + v^2](l+th1+th2) + (l+th1)*bar_delta2^2
    F2 = [(l+th2)^2 + v^2](l+th1+th2) + (l+th2)*bar_delta1^2

which arise when the nested geometric series of bath-dressed path segments
are summed.  The expanded degree-4 (sigma_z, tau_z) and degree-6 (joint)
polynomials agree with this construction; note that the odd-in-v term of the
sigma_z numerator carries bar_delta1^2 (not bar_delta1), as the resummation
shows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.polynomial import Polynomial

from .model import EffectiveParams, ModelParams, derive_effective

Observable = Literal["sigma_z", "tau_z", "sigma_z_tau_z"]

OBSERVABLES: tuple[Observable, ...] = ("sigma_z", "tau_z", "sigma_z_tau_z")


@dataclass(frozen=True)
class RationalLaplace:
    """Ratio of two real-coefficient polynomials in the Laplace variable.

    When ``prefactor_one_over_lambda`` is set, the function is
    (1/lambda) * numerator/denominator and the equilibrium pole at lambda = 0
    is carried by the flag, never as a denominator root.
    """

    numerator: Polynomial
    denominator: Polynomial
    prefactor_one_over_lambda: bool = True

    def __call__(self, lam):
        val = self.numerator(lam) / self.denominator(lam)
        if self.prefactor_one_over_lambda:
            val = val / lam
        return val


# ---------------------------------------------------------------------------
# kernel (closed) forms


def kernel_even_sigma(lam: complex, eff: EffectiveParams) -> complex:
    """Even-in-v kernel of <sigma_z(lambda)>."""
    a = lam + eff.theta1
    s = lam + eff.theta1 + eff.theta2
    d1, d2, v = eff.bar_delta1**2, eff.bar_delta2**2, eff.v
    q = a * a + v * v
    return -d1 * (a / q) * (1.0 + (v * v / (a * s)) * d2 / (q + (a / s) * d2))


def kernel_odd_sigma(lam: complex, eff: EffectiveParams) -> complex:
    """Odd-in-v kernel of <sigma_z(lambda)>; proportional to tan(pi*K1)*v."""
    a = lam + eff.theta1
    s = lam + eff.theta1 + eff.theta2
    d1, d2, v = eff.bar_delta1**2, eff.bar_delta2**2, eff.v
    q = a * a + v * v
    return eff.tan_K1 * d1 * (v / q) * (1.0 - (a / s) * d2 / (q + (a / s) * d2))


def alpha(zeta: int, lam: complex, eff: EffectiveParams) -> complex:
    """Bath-dressed sojourn-interval weight of spin ``zeta`` (1 or 2)."""
    if zeta == 1:
        a, own, other = lam + eff.theta1, eff.bar_delta1**2, eff.bar_delta2**2
    elif zeta == 2:
        a, own, other = lam + eff.theta2, eff.bar_delta2**2, eff.bar_delta1**2
    else:
        raise ValueError("zeta must be 1 or 2")
    s = lam + eff.theta1 + eff.theta2
    return (a / s) * own / (a * a + eff.v**2 + (a / s) * other)


def kernel_even_joint(lam: complex, eff: EffectiveParams) -> complex:
    """Even-in-v kernel of <sigma_z tau_z(lambda)>."""
    s = lam + eff.theta1 + eff.theta2
    a1, a2 = alpha(1, lam, eff), alpha(2, lam, eff)
    return -s * (a1 + a2 - 2.0 * a1 * a2) / (1.0 - a1 * a2)


def kernel_odd_joint(lam: complex, eff: EffectiveParams) -> complex:
    """Odd-in-v kernel of <sigma_z tau_z(lambda)>."""
    s = lam + eff.theta1 + eff.theta2
    a1, a2 = alpha(1, lam, eff), alpha(2, lam, eff)
    geom = 1.0 - a1 * a2
    term1 = eff.tan_K1 * (eff.v / (lam + eff.theta1)) * (a1 - a1 * a2)
    term2 = eff.tan_K2 * (eff.v / (lam + eff.theta2)) * (a2 - a1 * a2)
    return s * (term1 + term2) / geom


def sigma_z_kernel_form(lam: complex, eff: EffectiveParams) -> complex:
    """<sigma_z(lambda)> from the kernels (cross-validation route)."""
    return (lam + kernel_odd_sigma(lam, eff)) / (
        lam * (lam - kernel_even_sigma(lam, eff))
    )


def joint_kernel_form(lam: complex, eff: EffectiveParams) -> complex:
    """<sigma_z tau_z(lambda)> from the kernels (cross-validation route)."""
    return (lam + kernel_odd_joint(lam, eff)) / (
        lam * (lam - kernel_even_joint(lam, eff))
    )


# ---------------------------------------------------------------------------
# rational (polynomial) forms


def _lin(c: float) -> Polynomial:
    return Polynomial([c, 1.0])


def _building_blocks(eff: EffectiveParams):
    th1, th2, v = eff.theta1, eff.theta2, eff.v
    d1, d2 = eff.bar_delta1**2, eff.bar_delta2**2
    s = _lin(th1 + th2)
    q1 = _lin(th1) * _lin(th1) + Polynomial([v * v])
    q2 = _lin(th2) * _lin(th2) + Polynomial([v * v])
    f1 = q1 * s + _lin(th1) * d2
    f2 = q2 * s + _lin(th2) * d1
    return s, q1, q2, f1, f2


def sigma_z_rational(eff: EffectiveParams) -> RationalLaplace:
    """<sigma_z(lambda)> = (1/lambda) N1/D1 with monic quartic N1, D1."""
    lam = Polynomial([0.0, 1.0])
    d1, d2 = eff.bar_delta1**2, eff.bar_delta2**2
    s, _, _, f1, _ = _building_blocks(eff)
    den = lam * f1 + d1 * (_lin(eff.theta1) * s + d2)
    num = lam * f1 + eff.tan_K1 * eff.v * d1 * s
    return RationalLaplace(num, den)


def tau_z_rational(eff: EffectiveParams) -> RationalLaplace:
    """<tau_z(lambda)>: the sigma_z form with indices 1 and 2 interchanged."""
    return sigma_z_rational(eff.swap())


def joint_rational(eff: EffectiveParams) -> RationalLaplace:
    """<sigma_z tau_z(lambda)> = (1/lambda) N/D with monic sextic N, D."""
    lam = Polynomial([0.0, 1.0])
    d1, d2 = eff.bar_delta1**2, eff.bar_delta2**2
    s, q1, q2, f1, f2 = _building_blocks(eff)
    g1 = _lin(eff.theta1) * d1
    g2 = _lin(eff.theta2) * d2
    h = q1 * q2 * s + q1 * _lin(eff.theta2) * d1 + q2 * _lin(eff.theta1) * d2
    den = lam * h + g1 * f2 + g2 * f1 - 2.0 * g1 * g2
    num = lam * h + eff.v * (eff.tan_K1 * d1 * (f2 - g2) + eff.tan_K2 * d2 * (f1 - g1))
    return RationalLaplace(num, den)


def rational(observable: Observable, eff: EffectiveParams) -> RationalLaplace:
    if observable == "sigma_z":
        return sigma_z_rational(eff)
    if observable == "tau_z":
        return tau_z_rational(eff)
    if observable == "sigma_z_tau_z":
        return joint_rational(eff)
    raise ValueError(f"unknown observable {observable!r}")


# ---------------------------------------------------------------------------
# equilibrium values


def equilibrium_sigma(eff: EffectiveParams) -> float:
    """Equilibrium value of <sigma_z>: (v/2T) th1(th1+th2)/[bar_delta2^2 + th1(th1+th2)].

    Negligible for bar_delta2 != 0 and reduces to the biased single-spin
    value v/(2T) as bar_delta2 -> 0.  Requires a known positive temperature.
    """
    if eff.T is None or eff.T <= 0.0:
        raise ValueError("equilibrium value requires a known temperature T > 0")
    ths = eff.theta1 + eff.theta2
    den = eff.bar_delta2**2 + eff.theta1 * ths
    if den == 0.0:
        raise ValueError("equilibrium undefined for bar_delta2 = theta1 = 0")
    return (eff.v / (2.0 * eff.T)) * eff.theta1 * ths / den


def equilibrium_joint(eff: EffectiveParams) -> float:
    """Equilibrium value of <sigma_z tau_z>: v/(2T)."""
    if eff.T is None or eff.T <= 0.0:
        raise ValueError("equilibrium value requires a known temperature T > 0")
    return eff.v / (2.0 * eff.T)


# ---------------------------------------------------------------------------
# free (undamped) solutions


def free_laplace(observable: Observable, params: ModelParams) -> RationalLaplace:
    """Laplace transforms of the undamped coupled two-spin dynamics.

    Only valid on the K = T = 0 path (no bath renormalization); uses the bare
    tunneling couplings.
    """
    if params.K1 != 0.0 or params.K2 != 0.0 or params.T != 0.0:
        raise ValueError("free_laplace requires K1 = K2 = T = 0")
    eff = derive_effective(params)
    v = params.v
    omega2 = eff.bar_Omega**2
    delta2 = eff.bar_small_delta**2
    op2 = eff.bar_Omega_plus**2
    om2 = eff.bar_Omega_minus**2

    if observable in ("sigma_z", "tau_z"):
        other = params.delta2 if observable == "sigma_z" else params.delta1
        num = Polynomial([0.0, 0.0, v * v + other * other, 0.0, 1.0])
        den = Polynomial([delta2, 0.0, 1.0]) * Polynomial([omega2, 0.0, 1.0])
        if delta2 == 0.0:
            # common lambda^2 factor: cancel so the denominator keeps no
            # root at the origin
            num = Polynomial([v * v + other * other, 0.0, 1.0])
            den = Polynomial([omega2, 0.0, 1.0])
        return RationalLaplace(num, den)

    if observable == "sigma_z_tau_z":
        num = Polynomial([v * v, 0.0, 1.0]) * Polynomial(
            [v * v + params.delta1**2 + params.delta2**2, 0.0, 1.0]
        )
        den = Polynomial([op2, 0.0, 1.0]) * Polynomial([om2, 0.0, 1.0])
        if om2 == 0.0:
            num = Polynomial([params.delta1**2 + params.delta2**2, 0.0, 1.0])
            den = Polynomial([op2, 0.0, 1.0])
        return RationalLaplace(num, den)

    raise ValueError(f"unknown observable {observable!r}")
