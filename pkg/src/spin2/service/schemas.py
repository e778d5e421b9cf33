"""Request/response models of the HTTP service."""

from __future__ import annotations

from typing import Literal

import numpy as np
from pydantic import BaseModel, Field, model_validator

from ..laplace import Observable
from ..model import (EffectiveParams, ModelParams, derive_effective, effective,
                     validate_regime)


class BareParams(BaseModel):
    delta1: float
    delta2: float
    v: float
    K1: float = 0.0
    K2: float = 0.0
    T: float = 0.0
    omega_c: float = 100.0
    upsilon1: float = 0.0
    upsilon2: float = 0.0


class EffectiveInput(BaseModel):
    bar_delta1: float
    bar_delta2: float
    v: float
    theta1: float = 0.0
    theta2: float = 0.0
    tan_K1: float = 0.0
    tan_K2: float = 0.0
    T: float | None = None


class ParamsSpec(BaseModel):
    """Model parameters, given either bare (renormalization chain applied)
    or directly in effective barred form (figure-reproduction mode)."""

    bare: BareParams | None = None
    effective: EffectiveInput | None = None
    linearize_phase: bool = False

    @model_validator(mode="after")
    def _exactly_one(self) -> "ParamsSpec":
        if (self.bare is None) == (self.effective is None):
            raise ValueError("give exactly one of 'bare' or 'effective'")
        return self

    def to_effective(self) -> EffectiveParams:
        if self.bare is not None:
            eff = derive_effective(ModelParams(**self.bare.model_dump()))
        else:
            eff = effective(
                self.effective.bar_delta1, self.effective.bar_delta2,
                self.effective.v, self.effective.theta1, self.effective.theta2,
                tan_K1=self.effective.tan_K1, tan_K2=self.effective.tan_K2,
                T=self.effective.T,
            )
        return eff.linearized_phase() if self.linearize_phase else eff

    def warnings(self) -> list[str]:
        if self.bare is None:
            return []
        return validate_regime(ModelParams(**self.bare.model_dump()))


class GridSpec(BaseModel):
    """Either an explicit list of points or a uniform start/stop/num grid."""

    points: list[float] | None = None
    start: float | None = None
    stop: float | None = None
    num: int | None = Field(default=None, ge=2)

    @model_validator(mode="after")
    def _one_form(self) -> "GridSpec":
        uniform = (self.start is not None and self.stop is not None
                   and self.num is not None)
        if (self.points is None) == (not uniform):
            raise ValueError("give either 'points' or all of start/stop/num")
        return self

    def to_array(self) -> np.ndarray:
        if self.points is not None:
            return np.asarray(self.points, dtype=float)
        return np.linspace(self.start, self.stop, self.num)


class SweepSpec(BaseModel):
    """One-dimensional parameter sweep.

    ``variable`` names a field of the active parameter block ('theta1', 'v',
    'K1', ...); the shorthands 'theta' and 'bar_delta' set both spins at once
    in effective mode.
    """

    variable: str
    start: float
    stop: float
    num: int = Field(ge=1)
    scale: Literal["linear", "log"] = "linear"

    def to_values(self) -> np.ndarray:
        if self.scale == "log":
            if self.start <= 0 or self.stop <= 0:
                raise ValueError("log sweep needs positive start/stop")
            return np.geomspace(self.start, self.stop, self.num)
        return np.linspace(self.start, self.stop, self.num)

    def apply(self, spec: ParamsSpec, value: float) -> ParamsSpec:
        data = spec.model_dump()
        block = "bare" if spec.bare is not None else "effective"
        fields = dict(data[block])
        if block == "effective" and self.variable in ("theta", "bar_delta"):
            fields[self.variable + "1"] = value
            fields[self.variable + "2"] = value
        elif self.variable in fields:
            fields[self.variable] = value
        else:
            raise ValueError(
                f"sweep variable {self.variable!r} not a {block} parameter"
            )
        data[block] = fields
        return ParamsSpec(**data)


class EffectiveEcho(BaseModel):
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

    @classmethod
    def from_effective(cls, eff: EffectiveParams) -> "EffectiveEcho":
        return cls(**{f: getattr(eff, f) for f in cls.model_fields})


class ComplexPair(BaseModel):
    re: float
    im: float

    @classmethod
    def of(cls, z: complex) -> "ComplexPair":
        return cls(re=float(np.real(z)), im=float(np.imag(z)))


class SeriesOut(BaseModel):
    observable: str
    times: list[float]
    values: list[float]
    method: str
    sweep_value: float | None = None


class EvolveRequest(BaseModel):
    params: ParamsSpec
    observables: list[Observable] = ["sigma_z", "tau_z", "sigma_z_tau_z"]
    t_grid: GridSpec
    sweep: SweepSpec | None = None
    method: Literal["auto", "poles", "numeric"] = "auto"
    inversion_tol: float = 1e-8


class EvolveResponse(BaseModel):
    series: list[SeriesOut]
    sweep_variable: str | None
    effective: EffectiveEcho
    warnings: list[str]


class PolesRequest(BaseModel):
    params: ParamsSpec
    observable: Observable = "sigma_z"
    sweep: SweepSpec | None = None


class PoleRow(BaseModel):
    sweep_value: float | None
    poles: list[ComplexPair]
    # None when the pole set is too degenerate for stable residues
    amplitudes: list[ComplexPair] | None
    equilibrium: float | None
    initial_value: float | None


class PolesResponse(BaseModel):
    observable: str
    sweep_variable: str | None
    rows: list[PoleRow]
    effective: EffectiveEcho
    warnings: list[str]


class SpectrumRequest(BaseModel):
    params: ParamsSpec
    observable: Observable = "sigma_z_tau_z"
    omega_grid: GridSpec


class SpectrumResponse(BaseModel):
    observable: str
    omegas: list[float]
    values: list[float]
    effective: EffectiveEcho


class RateOut(BaseModel):
    rate: float
    regime: str
    validity: str


class PoleAmplitudeOut(BaseModel):
    pole: ComplexPair
    amplitude: ComplexPair


class RegimesRequest(BaseModel):
    params: ParamsSpec
    beta: float | None = None


class CrossoverOut(BaseModel):
    classification: str
    crossover_thetas: list[float]
    v_critical: float
    single_crossover: bool


class RegimesResponse(BaseModel):
    crossovers: CrossoverOut | None
    gamma_sigma: RateOut
    gamma_sigma_tau: RateOut
    low_temp_sigma: list[PoleAmplitudeOut]
    low_temp_joint: list[PoleAmplitudeOut]
    equilibrium_full_joint: float | None
    effective: EffectiveEcho
    warnings: list[str]


class SbeRequest(BaseModel):
    params: ParamsSpec
    omega_grid: GridSpec | None = None


class SbeResponse(BaseModel):
    gamma_tau: float
    numerator: list[float]
    denominator: list[float]
    poles: list[ComplexPair]
    amplitudes: list[ComplexPair]
    decoherence: RateOut
    spectrum_omegas: list[float] | None
    spectrum_values: list[float] | None
    effective: EffectiveEcho


class OracleRequest(BaseModel):
    params: ParamsSpec
    t_grid: GridSpec
    step: float | None = None
    tolerance: float = 1e-6


class OracleResponse(BaseModel):
    deviations: dict[str, float]
    tolerance: float
    passed: bool
    effective: EffectiveEcho


class HealthResponse(BaseModel):
    status: str
    version: str
