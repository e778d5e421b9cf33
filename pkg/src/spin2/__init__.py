"""Exact white-noise dynamics of two Ising-coupled dissipative spins."""

from .model import (EffectiveParams, ModelParams, derive_effective, effective,
                    validate_regime)
from .laplace import (OBSERVABLES, Observable, RationalLaplace,
                      equilibrium_joint, equilibrium_sigma, free_laplace,
                      joint_rational, rational, sigma_z_rational,
                      tau_z_rational)
from .dynamics import (DegeneratePolesError, InversionAccuracyError,
                       PoleDecomposition, TimeSeries, decompose, evaluate,
                       find_poles, inverse_laplace_numeric, series, spectrum)
from .regimes import (RateResult, RegimeReport, crossover_temperatures,
                      decoherence_rate, equilibrium_full_joint,
                      gamma_sigma, gamma_sigma_tau, low_temp_poles_joint,
                      low_temp_poles_sigma, sbe_high_temp, slow_sigma_joint,
                      structured_bath_spectrum, symmetric_joint_quartic)
from .oracle import compare_with_analytic, dephasing_generator, integrate

__version__ = "0.1.0"

__all__ = [
    "EffectiveParams", "ModelParams", "derive_effective", "effective",
    "validate_regime",
    "OBSERVABLES", "Observable", "RationalLaplace", "equilibrium_joint",
    "equilibrium_sigma", "free_laplace", "joint_rational", "rational",
    "sigma_z_rational", "tau_z_rational",
    "DegeneratePolesError", "InversionAccuracyError", "PoleDecomposition",
    "TimeSeries", "decompose", "evaluate", "find_poles",
    "inverse_laplace_numeric", "series", "spectrum",
    "RateResult", "RegimeReport", "crossover_temperatures", "decoherence_rate",
    "equilibrium_full_joint", "gamma_sigma", "gamma_sigma_tau",
    "low_temp_poles_joint", "low_temp_poles_sigma", "sbe_high_temp",
    "slow_sigma_joint", "structured_bath_spectrum", "symmetric_joint_quartic",
    "compare_with_analytic", "dephasing_generator", "integrate",
    "__version__",
]
