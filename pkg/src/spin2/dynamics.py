"""Time-domain reconstruction from the rational Laplace solutions.

Poles of the denominator polynomial are found via companion-matrix
eigenvalues plus one Newton polish step; residues then give the amplitudes of
the exponential pole sum.  A numerical inverse-Laplace route (de Hoog
rational approximation of the Bromwich integral, evaluated in extended
precision) is provided purely as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp
import numpy as np
from numpy.polynomial import Polynomial

from .laplace import RationalLaplace

_DEGENERACY_RTOL = 1e-6
_IMAG_RESIDUAL_TOL = 1e-10


class DegeneratePolesError(RuntimeError):
    """Raised when denominator roots are too close for a stable residue
    decomposition; callers should fall back to numerical inversion."""


class InversionAccuracyError(RuntimeError):
    """Raised when the numerical inverse-Laplace error estimate exceeds the
    requested tolerance."""


@dataclass(frozen=True)
class PoleDecomposition:
    """Dynamical poles, their complex amplitudes, and the equilibrium
    constant carried by the pole at lambda = 0."""

    poles: np.ndarray
    amplitudes: np.ndarray
    equilibrium: float

    def initial_value(self) -> float:
        return float(np.sum(self.amplitudes).real) + self.equilibrium


@dataclass(frozen=True)
class TimeSeries:
    times: np.ndarray
    values: np.ndarray
    observable: str = ""


def find_poles(den: Polynomial, max_degree: int = 6) -> np.ndarray:
    """All roots of a real-coefficient polynomial, conjugate-paired.

    Roots come from the companion matrix, are polished with one Newton step
    on the original polynomial, and conjugate partners are averaged so the
    returned set is exactly closed under conjugation.
    """
    coef = np.asarray(den.coef)
    if np.iscomplexobj(coef):
        scale = max(1.0, float(np.max(np.abs(coef))))
        if float(np.max(np.abs(coef.imag))) > 1e-12 * scale:
            raise ValueError("polynomial coefficients must be real")
        coef = coef.real
    coef = np.trim_zeros(coef.astype(float), "b")
    if coef.size < 2:
        raise ValueError("polynomial has zero leading coefficient after trimming")
    degree = coef.size - 1
    if degree > max_degree:
        raise ValueError(f"degree {degree} unsupported (max {max_degree})")
    poly = Polynomial(coef)
    deriv = poly.deriv()
    roots = poly.roots()
    # one Newton polish step
    dp = deriv(roots)
    ok = np.abs(dp) > 0
    roots[ok] = roots[ok] - poly(roots[ok]) / dp[ok]
    return _pair_conjugates(roots)


def _pair_conjugates(roots: np.ndarray) -> np.ndarray:
    scale = max(1e-300, float(np.max(np.abs(roots))))
    tol = 1e-9 * scale
    out = []
    used = np.zeros(len(roots), dtype=bool)
    order = np.argsort(np.abs(roots.imag))
    for i in order:
        if used[i]:
            continue
        z = roots[i]
        if abs(z.imag) <= tol:
            out.append(complex(z.real, 0.0))
            used[i] = True
            continue
        # nearest unused conjugate partner
        cand = [j for j in range(len(roots)) if not used[j] and j != i]
        j = min(cand, key=lambda k: abs(roots[k] - z.conjugate()))
        avg = 0.5 * (z + roots[j].conjugate())
        out.extend([avg, avg.conjugate()])
        used[i] = used[j] = True
    return np.array(out, dtype=complex)


def decompose(rat: RationalLaplace) -> PoleDecomposition:
    """Partial-fraction decomposition of a rational Laplace solution.

    The equilibrium constant is the residue of the explicit 1/lambda pole,
    N(0)/D(0); dynamical amplitudes are N(l_i)/(l_i D'(l_i)).  Refuses
    near-degenerate pole sets rather than returning ill-conditioned
    amplitudes.
    """
    poles = find_poles(rat.denominator)
    scale = max(1.0, float(np.max(np.abs(poles))))
    gaps = np.abs(poles[:, None] - poles[None, :])
    np.fill_diagonal(gaps, np.inf)
    if np.min(gaps) < _DEGENERACY_RTOL * scale:
        raise DegeneratePolesError(
            f"pole gap {np.min(gaps):.3e} below tolerance at scale {scale:.3e}"
        )
    num, den = rat.numerator, rat.denominator
    dden = den.deriv()
    if rat.prefactor_one_over_lambda:
        if np.min(np.abs(poles)) < _DEGENERACY_RTOL * scale:
            raise DegeneratePolesError("dynamical pole collides with lambda = 0")
        equilibrium = float(num(0.0) / den(0.0))
        amplitudes = num(poles) / (poles * dden(poles))
    else:
        equilibrium = 0.0
        amplitudes = num(poles) / dden(poles)
    return PoleDecomposition(poles=poles, amplitudes=amplitudes, equilibrium=equilibrium)


def evaluate(dec: PoleDecomposition, t: float) -> float:
    """Pole-sum value at a single time t >= 0."""
    if t < 0:
        raise ValueError("t must be non-negative")
    val = np.sum(dec.amplitudes * np.exp(dec.poles * t)) + dec.equilibrium
    _check_real(np.atleast_1d(val))
    return float(val.real)


def series(dec: PoleDecomposition, t_grid: np.ndarray, observable: str = "") -> TimeSeries:
    """Pole-sum trajectory on a time grid."""
    t = np.asarray(t_grid, dtype=float)
    if np.any(t < 0):
        raise ValueError("times must be non-negative")
    vals = np.sum(
        dec.amplitudes[None, :] * np.exp(dec.poles[None, :] * t[:, None]), axis=1
    ) + dec.equilibrium
    _check_real(vals)
    return TimeSeries(times=t, values=vals.real, observable=observable)


def _check_real(vals: np.ndarray) -> None:
    scale = max(1.0, float(np.max(np.abs(vals))))
    resid = float(np.max(np.abs(vals.imag)))
    if resid > _IMAG_RESIDUAL_TOL * scale:
        raise RuntimeError(
            f"imaginary residue {resid:.3e} exceeds conjugate-closure tolerance"
        )


# ---------------------------------------------------------------------------
# numerical inversion (verification oracle)


def _mp_rational(rat: RationalLaplace):
    num = [mp.mpf(c) for c in rat.numerator.coef[::-1]]
    den = [mp.mpf(c) for c in rat.denominator.coef[::-1]]
    flag = rat.prefactor_one_over_lambda

    def f(p):
        val = mp.polyval(num, p) / mp.polyval(den, p)
        return val / p if flag else val

    return f


def _initial_value(rat: RationalLaplace) -> float:
    # initial-value theorem: lim lambda * F(lambda)
    dn = rat.numerator.degree()
    dd = rat.denominator.degree() + (1 if rat.prefactor_one_over_lambda else 0)
    gap = dd - dn
    if gap > 1:
        return 0.0
    if gap == 1:
        return float(rat.numerator.coef[-1] / rat.denominator.coef[-1])
    raise ValueError("rational function does not vanish at infinity")


def inverse_laplace_numeric(
    rat: RationalLaplace,
    t_grid: np.ndarray,
    tol: float = 1e-8,
    observable: str = "",
) -> TimeSeries:
    """Invert the full rational function by de Hoog quadrature (mpmath).

    Two different approximation orders are compared per time point; their
    disagreement serves as the error estimate and an
    :class:`InversionAccuracyError` is raised when it exceeds ``tol``.
    """
    t = np.asarray(t_grid, dtype=float)
    f = _mp_rational(rat)
    vals = np.empty_like(t)
    with mp.workdps(55):
        for i, ti in enumerate(t):
            if ti == 0.0:
                vals[i] = _initial_value(rat)
                continue
            lo = mp.invertlaplace(f, ti, method="dehoog", degree=30)
            hi = mp.invertlaplace(f, ti, method="dehoog", degree=40)
            if abs(lo - hi) > tol:
                raise InversionAccuracyError(
                    f"estimated inversion error {float(abs(lo - hi)):.3e} at t = {ti:g}"
                )
            vals[i] = float(hi)
    return TimeSeries(times=t, values=vals, observable=observable)


# ---------------------------------------------------------------------------
# Fourier-regime evaluation


def spectrum(rat: RationalLaplace, omega_grid: np.ndarray) -> TimeSeries:
    """Re F(lambda = -i omega) of the relaxing part: the Fourier-regime profile.

    The constant equilibrium contribution (the explicit 1/lambda pole) is
    subtracted before continuing onto the imaginary axis, so the profile is
    finite at omega = 0.  Requires damped dynamics (all denominator roots
    strictly in the left half-plane).
    """
    roots = find_poles(rat.denominator)
    if float(np.max(roots.real)) > -1e-12 * max(1.0, float(np.max(np.abs(roots)))):
        raise ValueError("spectrum requires damped dynamics (all poles with Re < 0)")
    omega = np.asarray(omega_grid, dtype=float)
    num, den = rat.numerator, rat.denominator
    lam = -1j * omega
    if rat.prefactor_one_over_lambda:
        eq = num(0.0) / den(0.0)
        nonzero = omega != 0.0
        vals = np.empty_like(omega)
        lnz = lam[nonzero]
        vals[nonzero] = ((num(lnz) / den(lnz) - eq) / lnz).real
        if np.any(~nonzero):
            # limit value: d/dlambda [N/D] at 0
            d0, n0 = den(0.0), num(0.0)
            vals[~nonzero] = (num.deriv()(0.0) * d0 - n0 * den.deriv()(0.0)) / d0**2
    else:
        vals = (num(lam) / den(lam)).real
    return TimeSeries(times=omega, values=vals, observable="spectrum")
