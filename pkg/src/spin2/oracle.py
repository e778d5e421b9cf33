"""Independent numerical oracle: direct Lindblad integration.

The white-noise master equation for the two coupled spins is pure dephasing
with rates theta1/2, theta2/2 on top of the coherent evolution generated by
the renormalized Hamiltonian.  Expectation values of the 15 non-identity
Pauli products close under the adjoint generator, so the dynamics is a
constant linear system on a 15-dimensional Bloch vector.  This route shares
no code with the Laplace solutions and validates them (in the pure-dephasing
sector, i.e. without the odd-in-v phase terms).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .dynamics import TimeSeries
from .model import EffectiveParams

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
_PAULIS = {"i": _I2, "x": _X, "y": _Y, "z": _Z}

# basis labels: first letter spin sigma, second letter spin tau
BASIS_LABELS: tuple[str, ...] = tuple(
    a + b for a, b in product("ixyz", repeat=2) if (a, b) != ("i", "i")
)


def _basis_operator(label: str) -> np.ndarray:
    return np.kron(_PAULIS[label[0]], _PAULIS[label[1]])


@dataclass(frozen=True)
class BlochState:
    """Expectation values of the 15 Pauli products, in BASIS_LABELS order."""

    vector: np.ndarray

    def __getitem__(self, label: str) -> float:
        return float(self.vector[BASIS_LABELS.index(label)])


def initial_state() -> BlochState:
    """Both spins up: sigma_z = tau_z = sigma_z tau_z = 1, all else 0."""
    vec = np.zeros(len(BASIS_LABELS))
    for label in ("zi", "iz", "zz"):
        vec[BASIS_LABELS.index(label)] = 1.0
    return BlochState(vec)


def dephasing_generator(eff: EffectiveParams) -> np.ndarray:
    """Real 15x15 generator G of the Bloch-vector equation da/dt = G a.

    Built by expanding each adjoint-evolved basis operator over the
    orthogonal Pauli basis: d<W_j>/dt = sum_k tr(L*(W_j) W_k)/4 <W_k>.
    """
    h = (
        -0.5 * eff.bar_delta1 * _basis_operator("xi")
        - 0.5 * eff.bar_delta2 * _basis_operator("ix")
        - 0.5 * eff.v * _basis_operator("zz")
    )
    z1 = _basis_operator("zi")
    z2 = _basis_operator("iz")

    def adjoint_rhs(w: np.ndarray) -> np.ndarray:
        val = 1.0j * (h @ w - w @ h)
        val += 0.5 * eff.theta1 * (z1 @ w @ z1 - w)
        val += 0.5 * eff.theta2 * (z2 @ w @ z2 - w)
        return val

    ops = [_basis_operator(lbl) for lbl in BASIS_LABELS]
    g = np.empty((len(ops), len(ops)))
    for j, wj in enumerate(ops):
        rhs = adjoint_rhs(wj)
        for k, wk in enumerate(ops):
            val = np.trace(rhs @ wk) / 4.0
            if abs(val.imag) > 1e-12 * max(1.0, abs(val)):
                raise RuntimeError("generator projection produced complex entry")
            g[j, k] = val.real
    return g


def _rk4_step_matrix(g: np.ndarray, h: float) -> np.ndarray:
    # classical RK4 applied to a constant linear system is exactly the
    # degree-4 Taylor polynomial of the matrix exponential
    hg = h * g
    p = np.eye(g.shape[0]) + hg
    term = hg
    for k in (2, 3, 4):
        term = term @ hg / k
        p = p + term
    return p


def default_step(eff: EffectiveParams) -> float:
    scale = max(eff.bar_Omega_plus, eff.theta1 + eff.theta2, 1e-12)
    return 1e-3 / scale


def integrate(
    eff: EffectiveParams,
    t_grid: np.ndarray,
    state: BlochState | None = None,
    step: float | None = None,
) -> dict[str, TimeSeries]:
    """Fourth-order integration of the Bloch-vector equation on a time grid.

    The per-interval propagator is an integer power of the single-step RK4
    matrix, so arbitrarily fine internal steps cost one matrix power per grid
    interval.  Returns the three longitudinal observables.
    """
    t = np.asarray(t_grid, dtype=float)
    if t.size == 0 or np.any(np.diff(t) <= 0) or t[0] < 0:
        raise ValueError("time grid must be non-empty, increasing, non-negative")
    h = default_step(eff) if step is None else step
    if h <= 0:
        raise ValueError("step must be positive")
    g = dephasing_generator(eff)
    vec = (initial_state() if state is None else state).vector.copy()

    out = np.empty((t.size, vec.size))
    prev = 0.0
    for i, ti in enumerate(t):
        dt = ti - prev
        if dt > 0:
            n = max(1, int(np.ceil(dt / h)))
            p = _rk4_step_matrix(g, dt / n)
            vec = np.linalg.matrix_power(p, n) @ vec
        out[i] = vec
        prev = ti

    cols = {"sigma_z": "zi", "tau_z": "iz", "sigma_z_tau_z": "zz"}
    return {
        name: TimeSeries(times=t, values=out[:, BASIS_LABELS.index(lbl)].copy(),
                         observable=name)
        for name, lbl in cols.items()
    }


def compare_with_analytic(
    eff: EffectiveParams,
    t_grid: np.ndarray,
    step: float | None = None,
) -> dict[str, float]:
    """Max absolute deviation between the Lindblad oracle and the pole sums.

    The comparison drops the odd-in-v phase terms on the analytic side (the
    pure-dephasing Lindblad generator has none); near-degenerate pole sets
    fall back to numerical Laplace inversion.
    """
    from .dynamics import (DegeneratePolesError, decompose,
                           inverse_laplace_numeric, series)
    from .laplace import OBSERVABLES, rational

    numeric = integrate(eff, t_grid, step=step)
    eff0 = eff.with_tan_zeroed()
    devs: dict[str, float] = {}
    for obs in OBSERVABLES:
        rat = rational(obs, eff0)
        try:
            analytic = series(decompose(rat), t_grid, observable=obs)
        except DegeneratePolesError:
            analytic = inverse_laplace_numeric(rat, t_grid, observable=obs)
        devs[obs] = float(np.max(np.abs(analytic.values - numeric[obs].values)))
    return devs
