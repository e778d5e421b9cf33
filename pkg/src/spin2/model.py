"""Bare and effective parameters of the two-spin + Ohmic-baths model.

Each spin has a tunneling coupling ``delta``, a dimensionless Ohmic coupling
``K`` to its own bath with cutoff ``omega_c``, and the two spins interact via
an Ising coupling of strength ``v``.  In the white-noise regime all bath
effects reduce to a single damping rate per spin, the scaled thermal energy
``theta = 2*pi*K*T``, plus an adiabatic renormalization of the tunneling
element.  Everything downstream (Laplace solutions, pole analysis) works with
the renormalized quantities collected in :class:`EffectiveParams`.

Units: hbar = k_B = 1, so all parameters are angular frequencies except the
dimensionless couplings K and the cutoff-shape corrections upsilon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class ModelParams:
    """Bare physical inputs.

    upsilon1/upsilon2 correct for deviations of the actual high-frequency
    bath behavior from the exact exponential cutoff; they default to 0.
    """

    delta1: float
    delta2: float
    v: float
    K1: float
    K2: float
    T: float
    omega_c: float
    upsilon1: float = 0.0
    upsilon2: float = 0.0

    def __post_init__(self) -> None:
        if self.delta1 < 0 or self.delta2 < 0:
            raise ValueError("tunneling couplings delta1, delta2 must be non-negative")
        if (self.delta1 == 0 and self.K1 > 0) or (self.delta2 == 0 and self.K2 > 0):
            raise ValueError("a spin with K > 0 needs a positive tunneling coupling")
        if self.omega_c <= 0:
            raise ValueError("cutoff omega_c must be positive")
        if self.T < 0:
            raise ValueError("temperature T must be non-negative")
        if self.K1 < 0 or self.K2 < 0:
            raise ValueError("Ohmic couplings K1, K2 must be non-negative")


@dataclass(frozen=True)
class EffectiveParams:
    """Renormalized quantities entering the white-noise solutions.

    theta1/theta2 are the scaled thermal energies 2*pi*K*T, bar_delta1/2 the
    adiabatically renormalized tunneling elements, and the four barred
    eigenfrequencies are those of the undamped coupled system built from the
    barred tunneling elements.  ``T`` is carried along when known so that the
    closed-form equilibrium values (which contain v/(2T)) can be evaluated;
    it is None when the parameters were specified directly in effective form
    without a temperature.
    """

    theta1: float
    theta2: float
    delta_T1: float
    delta_T2: float
    bar_delta1: float
    bar_delta2: float
    tan_K1: float
    tan_K2: float
    v: float
    bar_Omega: float
    bar_small_delta: float
    bar_Omega_plus: float
    bar_Omega_minus: float
    T: float | None = None

    def swap(self) -> "EffectiveParams":
        """Interchange the roles of spin 1 and spin 2 (eigenfrequencies are
        symmetric under the swap)."""
        return replace(
            self,
            theta1=self.theta2, theta2=self.theta1,
            delta_T1=self.delta_T2, delta_T2=self.delta_T1,
            bar_delta1=self.bar_delta2, bar_delta2=self.bar_delta1,
            tan_K1=self.tan_K2, tan_K2=self.tan_K1,
        )

    def with_tan_zeroed(self) -> "EffectiveParams":
        """Drop the odd-in-v phase terms (pure dephasing sector)."""
        return replace(self, tan_K1=0.0, tan_K2=0.0)

    def linearized_phase(self) -> "EffectiveParams":
        """Replace tan(pi*K) by pi*K.

        With the linearized phase the closed equilibrium values v/(2T) (joint)
        and the corresponding sigma_z form hold exactly as the lambda -> 0
        limits of the rational solutions; with the full tangent they hold to
        O(K^2).
        """
        return replace(
            self,
            tan_K1=math.atan(self.tan_K1),
            tan_K2=math.atan(self.tan_K2),
        )

    @property
    def is_symmetric(self) -> bool:
        return (
            math.isclose(self.bar_delta1, self.bar_delta2, rel_tol=1e-12, abs_tol=1e-15)
            and math.isclose(self.theta1, self.theta2, rel_tol=1e-12, abs_tol=1e-15)
        )


def _eigenfrequencies(bar_delta1: float, bar_delta2: float, v: float):
    omega_plus = math.hypot(bar_delta1 + bar_delta2, v)
    omega_minus = math.hypot(bar_delta1 - bar_delta2, v)
    return (
        0.5 * (omega_plus + omega_minus),
        0.5 * (omega_plus - omega_minus),
        omega_plus,
        omega_minus,
    )


def effective(
    bar_delta1: float,
    bar_delta2: float,
    v: float,
    theta1: float,
    theta2: float,
    tan_K1: float = 0.0,
    tan_K2: float = 0.0,
    T: float | None = None,
) -> EffectiveParams:
    """Build EffectiveParams directly from barred quantities.

    This is the figure-reproduction mode: the renormalization chain is
    bypassed and bar_delta, theta, v are taken at face value (typically in
    units where bar_delta = 1).
    """
    if bar_delta1 < 0 or bar_delta2 < 0:
        raise ValueError("bar_delta1, bar_delta2 must be non-negative")
    if theta1 < 0 or theta2 < 0:
        raise ValueError("theta1, theta2 must be non-negative")
    omega, small_delta, omega_plus, omega_minus = _eigenfrequencies(
        bar_delta1, bar_delta2, v
    )
    # delta_T recovered through bar_delta^2 = delta_T^2 cos(pi K)
    cos1 = math.cos(math.atan(tan_K1))
    cos2 = math.cos(math.atan(tan_K2))
    return EffectiveParams(
        theta1=theta1, theta2=theta2,
        delta_T1=bar_delta1 / math.sqrt(cos1),
        delta_T2=bar_delta2 / math.sqrt(cos2),
        bar_delta1=bar_delta1, bar_delta2=bar_delta2,
        tan_K1=tan_K1, tan_K2=tan_K2,
        v=v,
        bar_Omega=omega, bar_small_delta=small_delta,
        bar_Omega_plus=omega_plus, bar_Omega_minus=omega_minus,
        T=T,
    )


def _renormalized_element(delta: float, K: float, omega_c: float) -> float:
    # inversion of delta_r^(1-K) = delta / omega_c^K
    return (delta / omega_c**K) ** (1.0 / (1.0 - K))


def derive_effective(params: ModelParams) -> EffectiveParams:
    """Compute all effective (renormalized, scaled-temperature) quantities.

    Rejects K >= 1/2: tan(pi*K) diverges there and the white-noise formulas
    assume the Kondo-parameter range K < 1/2.
    """
    if params.K1 >= 0.5 or params.K2 >= 0.5:
        raise ValueError("Ohmic couplings must satisfy K < 1/2")

    def one_spin(delta: float, K: float, upsilon: float):
        theta = 2.0 * math.pi * K * params.T
        if K == 0.0:
            # exact special case: no renormalization, no 0^0 ambiguity
            return theta, delta, delta, 0.0
        delta_r = _renormalized_element(delta, K, params.omega_c)
        if params.T == 0.0:
            delta_T = delta_r * math.exp(-K * upsilon)
        else:
            delta_T = (
                (2.0 * math.pi * params.T / delta_r) ** K
                * delta_r
                * math.exp(-K * upsilon)
            )
        bar_delta = delta_T * math.sqrt(math.cos(math.pi * K))
        return theta, delta_T, bar_delta, math.tan(math.pi * K)

    theta1, delta_T1, bar_delta1, tan_K1 = one_spin(
        params.delta1, params.K1, params.upsilon1
    )
    theta2, delta_T2, bar_delta2, tan_K2 = one_spin(
        params.delta2, params.K2, params.upsilon2
    )
    omega, small_delta, omega_plus, omega_minus = _eigenfrequencies(
        bar_delta1, bar_delta2, params.v
    )
    return EffectiveParams(
        theta1=theta1, theta2=theta2,
        delta_T1=delta_T1, delta_T2=delta_T2,
        bar_delta1=bar_delta1, bar_delta2=bar_delta2,
        tan_K1=tan_K1, tan_K2=tan_K2,
        v=params.v,
        bar_Omega=omega, bar_small_delta=small_delta,
        bar_Omega_plus=omega_plus, bar_Omega_minus=omega_minus,
        T=params.T,
    )


def validate_regime(params: ModelParams) -> list[str]:
    """Advisory checks of the white-noise validity window.

    Returns a list of human-readable warnings; never raises.  The white-noise
    form is reliable for K below roughly 0.3 and for temperatures between the
    system eigenfrequencies and well below the cutoff.
    """
    warnings: list[str] = []
    if params.K1 > 0.3:
        warnings.append(f"K1 = {params.K1:g} exceeds 0.3; white-noise form degrades")
    if params.K2 > 0.3:
        warnings.append(f"K2 = {params.K2:g} exceeds 0.3; white-noise form degrades")
    try:
        eff = derive_effective(params)
    except ValueError:
        return warnings
    if params.T < eff.bar_Omega_plus:
        warnings.append(
            f"T = {params.T:g} below white-noise validity "
            f"(eigenfrequencies up to {eff.bar_Omega_plus:g})"
        )
    if params.T >= 0.1 * params.omega_c:
        warnings.append(
            f"T = {params.T:g} approaches the cutoff omega_c = {params.omega_c:g}"
        )
    return warnings
