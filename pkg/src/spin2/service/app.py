"""FastAPI service exposing the analytic solutions and oracles."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np
from fastapi import FastAPI, HTTPException

from .. import __version__
from ..dynamics import (DegeneratePolesError, InversionAccuracyError,
                        decompose, find_poles, inverse_laplace_numeric,
                        series, spectrum)
from ..laplace import rational
from ..model import EffectiveParams
from ..oracle import compare_with_analytic
from ..regimes import (crossover_temperatures, decoherence_rate,
                       equilibrium_full_joint, gamma_sigma, gamma_sigma_tau,
                       low_temp_poles_joint, low_temp_poles_sigma,
                       sbe_high_temp, structured_bath_spectrum)
from .schemas import (ComplexPair, CrossoverOut, EffectiveEcho, EvolveRequest,
                      EvolveResponse, HealthResponse, OracleRequest,
                      OracleResponse, PoleAmplitudeOut, PoleRow, PolesRequest,
                      PolesResponse, RateOut, RegimesRequest, RegimesResponse,
                      SbeRequest, SbeResponse, SeriesOut, SpectrumRequest,
                      SpectrumResponse)

app = FastAPI(title="spin2", version=__version__)


def _effective_or_422(spec) -> EffectiveParams:
    try:
        return spec.to_effective()
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


def _sweep_points(req) -> list[tuple[float | None, EffectiveParams]]:
    if req.sweep is None:
        return [(None, _effective_or_422(req.params))]
    try:
        values = req.sweep.to_values()
        return [(float(v), req.sweep.apply(req.params, float(v)).to_effective())
                for v in values]
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


def _one_series(obs, eff, t, method, inversion_tol, sweep_value):
    rat = rational(obs, eff)
    if method in ("auto", "poles"):
        try:
            ts = series(decompose(rat), t, observable=obs)
            return SeriesOut(observable=obs, times=list(ts.times),
                             values=list(ts.values), method="poles",
                             sweep_value=sweep_value)
        except DegeneratePolesError as exc:
            if method == "poles":
                raise HTTPException(status_code=409, detail=str(exc)) from exc
    try:
        ts = inverse_laplace_numeric(rat, t, tol=inversion_tol, observable=obs)
    except InversionAccuracyError as exc:
        raise HTTPException(status_code=409, detail=str(exc)) from exc
    return SeriesOut(observable=obs, times=list(ts.times),
                     values=list(ts.values), method="numeric",
                     sweep_value=sweep_value)


@app.post("/evolve", response_model=EvolveResponse)
def evolve(req: EvolveRequest) -> EvolveResponse:
    points = _sweep_points(req)
    t = req.t_grid.to_array()
    if t.size == 0 or np.any(t < 0):
        raise HTTPException(status_code=422, detail="times must be non-negative")
    tasks = [(value, eff, obs) for value, eff in points
             for obs in req.observables]
    with ThreadPoolExecutor() as pool:
        out = list(pool.map(
            lambda a: _one_series(a[2], a[1], t, req.method,
                                  req.inversion_tol, a[0]),
            tasks,
        ))
    return EvolveResponse(series=out,
                          sweep_variable=req.sweep.variable if req.sweep else None,
                          effective=EffectiveEcho.from_effective(points[0][1]),
                          warnings=req.params.warnings())


def _one_pole_row(observable, eff, sweep_value) -> PoleRow:
    rat = rational(observable, eff)
    try:
        dec = decompose(rat)
        return PoleRow(
            sweep_value=sweep_value,
            poles=[ComplexPair.of(z) for z in dec.poles],
            amplitudes=[ComplexPair.of(z) for z in dec.amplitudes],
            equilibrium=dec.equilibrium,
            initial_value=dec.initial_value(),
        )
    except DegeneratePolesError:
        roots = find_poles(rat.denominator)
        return PoleRow(sweep_value=sweep_value,
                       poles=[ComplexPair.of(z) for z in roots],
                       amplitudes=None, equilibrium=None, initial_value=None)


@app.post("/poles", response_model=PolesResponse)
def poles(req: PolesRequest) -> PolesResponse:
    points = _sweep_points(req)
    if req.sweep is None:
        # single-point degeneracy is an error rather than a partial row
        eff = points[0][1]
        try:
            decompose(rational(req.observable, eff))
        except DegeneratePolesError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
    with ThreadPoolExecutor() as pool:
        rows = list(pool.map(
            lambda p: _one_pole_row(req.observable, p[1], p[0]), points))
    return PolesResponse(
        observable=req.observable,
        sweep_variable=req.sweep.variable if req.sweep else None,
        rows=rows,
        effective=EffectiveEcho.from_effective(points[0][1]),
        warnings=req.params.warnings(),
    )


@app.post("/spectrum", response_model=SpectrumResponse)
def spectrum_endpoint(req: SpectrumRequest) -> SpectrumResponse:
    eff = _effective_or_422(req.params)
    rat = rational(req.observable, eff)
    try:
        ts = spectrum(rat, req.omega_grid.to_array())
    except ValueError as exc:
        raise HTTPException(status_code=409, detail=str(exc)) from exc
    return SpectrumResponse(observable=req.observable, omegas=list(ts.times),
                            values=list(ts.values),
                            effective=EffectiveEcho.from_effective(eff))


def _pole_amp_list(pairs) -> list[PoleAmplitudeOut]:
    return [PoleAmplitudeOut(pole=ComplexPair.of(p), amplitude=ComplexPair.of(a))
            for p, a in pairs]


@app.post("/regimes", response_model=RegimesResponse)
def regimes(req: RegimesRequest) -> RegimesResponse:
    eff = _effective_or_422(req.params)
    crossovers = None
    if eff.is_symmetric and eff.v > 0 and eff.bar_delta1 > 0:
        rep = crossover_temperatures(eff)
        crossovers = CrossoverOut(
            classification=rep.classification,
            crossover_thetas=list(rep.crossover_thetas),
            v_critical=rep.v_critical,
            single_crossover=rep.single_crossover,
        )
    try:
        gs = gamma_sigma(eff)
        gst = gamma_sigma_tau(eff)
    except ZeroDivisionError as exc:
        raise HTTPException(status_code=409,
                            detail="rates undefined at zero damping") from exc
    beta = req.beta if req.beta is not None else (
        1.0 / eff.T if eff.T else None)
    eq_full = equilibrium_full_joint(eff, beta) if beta is not None else None
    return RegimesResponse(
        crossovers=crossovers,
        gamma_sigma=RateOut(**gs.__dict__),
        gamma_sigma_tau=RateOut(**gst.__dict__),
        low_temp_sigma=_pole_amp_list(low_temp_poles_sigma(eff)),
        low_temp_joint=_pole_amp_list(low_temp_poles_joint(eff)),
        equilibrium_full_joint=eq_full,
        effective=EffectiveEcho.from_effective(eff),
        warnings=req.params.warnings(),
    )


@app.post("/sbe", response_model=SbeResponse)
def sbe(req: SbeRequest) -> SbeResponse:
    eff = _effective_or_422(req.params)
    try:
        result = sbe_high_temp(eff)
    except ValueError as exc:
        raise HTTPException(status_code=409, detail=str(exc)) from exc
    dec = decoherence_rate(eff)
    omegas = values = None
    if req.omega_grid is not None:
        w = req.omega_grid.to_array()
        omegas = list(w)
        values = list(np.atleast_1d(structured_bath_spectrum(w, eff)))
    return SbeResponse(
        gamma_tau=result.gamma_tau,
        numerator=list(result.rational.numerator.coef),
        denominator=list(result.rational.denominator.coef),
        poles=[ComplexPair.of(z) for z in result.poles],
        amplitudes=[ComplexPair.of(z) for z in result.amplitudes],
        decoherence=RateOut(**dec.__dict__),
        spectrum_omegas=omegas,
        spectrum_values=values,
        effective=EffectiveEcho.from_effective(eff),
    )


@app.post("/oracle", response_model=OracleResponse)
def oracle(req: OracleRequest) -> OracleResponse:
    eff = _effective_or_422(req.params)
    t = req.t_grid.to_array()
    try:
        devs = compare_with_analytic(eff, t, step=req.step)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return OracleResponse(
        deviations=devs,
        tolerance=req.tolerance,
        passed=all(d <= req.tolerance for d in devs.values()),
        effective=EffectiveEcho.from_effective(eff),
    )
