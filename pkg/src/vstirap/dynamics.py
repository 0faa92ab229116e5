"""Dissipative transit dynamics of one atom and its emission accounting.

The three-state manifold (|u,0>, |e,0>, |g,1>) is open: the cavity photon
leaks out at field decay rate kappa (photon loss rate 2 kappa rho_33) and
the excited level decays transversally at population rate gamma.  Both
channels are pure loss, so tr(rho) is the population still inside the
manifold and

    p_emit(t) + p_spont(t) + tr(rho(t)) = 1

along every trajectory.  The final p_emit is the per-atom photon-emission
probability.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernel
from .model import PhysicalParams, cavity_rabi, integration_window, pump_rabi

__all__ = [
    "IntegratorOptions",
    "TrajectoryRecord",
    "IntegrationError",
    "hamiltonian",
    "liouvillian_rhs",
    "evolve",
    "transit_summary",
    "emission_probability",
    "dark_state_population",
]


class IntegrationError(RuntimeError):
    """Adaptive integration failed; ``t_last`` is the last good time."""

    def __init__(self, message: str, t_last: float):
        super().__init__(message)
        self.t_last = t_last


@dataclass(frozen=True)
class IntegratorOptions:
    """Tolerances and sampling for the transit integration.

    rtol/atol are the per-step relative/absolute error targets of the
    embedded 5(4) pair; n_samples uniform samples are recorded over the
    window for the trajectory record.
    """

    rtol: float = 1e-9
    atol: float = 1e-12
    n_samples: int = 2001
    max_steps: int = kernel.DEFAULT_MAX_STEPS


@dataclass(frozen=True)
class TrajectoryRecord:
    """Time series of one transit.

    rho_series[k] is the 3x3 density matrix at times[k]; r_emit is the
    transient photon-emission rate 2 kappa rho_33; the cumulative
    probabilities are integrated inside the ODE, not by post-hoc
    quadrature, so the budget identity holds at integrator tolerance.
    """

    times: np.ndarray
    rho_series: np.ndarray
    r_emit: np.ndarray
    p_emit_cumulative: np.ndarray
    p_spont_cumulative: np.ndarray
    theta_series: np.ndarray
    g0: float = field(default=np.nan)

    @property
    def trace(self) -> np.ndarray:
        return np.einsum("kii->k", self.rho_series).real

    @property
    def p_emit(self) -> float:
        return float(self.p_emit_cumulative[-1])

    @property
    def p_spont(self) -> float:
        return float(self.p_spont_cumulative[-1])


def hamiltonian(g, omega_p, delta) -> np.ndarray:
    """Interaction Hamiltonian on the one-photon manifold (hbar = 1):

        H = 1/2 [[0,       -Omega_P, 0   ],
                 [-Omega_P, 2 Delta, -2g ],
                 [0,       -2g,      0   ]]
    """
    return 0.5 * np.array(
        [
            [0.0, -omega_p, 0.0],
            [-omega_p, 2.0 * delta, -2.0 * g],
            [0.0, -2.0 * g, 0.0],
        ],
        dtype=np.complex128,
    )


def liouvillian_rhs(rho: np.ndarray, t: float, g0: float, p: PhysicalParams) -> np.ndarray:
    """drho/dt at time t: -i[H(t), rho] minus the anticommutator damping
    {kappa P_g1 + (gamma/2) P_e0, rho}.

    Single source of truth: evaluates the same compiled right-hand side
    the integrator uses.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (3, 3):
        raise ValueError(f"rho must be 3x3, got shape {rho.shape}")
    y = np.zeros(11, np.complex128)
    y[:9] = rho.reshape(9)
    out = np.empty(11, np.complex128)
    kernel._rhs(float(t), y, out, p.omega0_peak, g0, p.delta_x,
                p.w_c, p.w_p, p.v, p.delta, p.kappa, p.gamma)
    return out[:9].reshape(3, 3)


def _run(g0: float, p: PhysicalParams, opts: IntegratorOptions, t_samples):
    t0, t1 = integration_window(p)
    status, t_reached, y, steps, samples = kernel.run_transit(
        t0, t1, p.omega0_peak, g0, p.delta_x, p.w_c, p.w_p, p.v,
        p.delta, p.kappa, p.gamma, opts.rtol, opts.atol,
        max_steps=opts.max_steps, t_samples=t_samples,
    )
    if status == kernel.STATUS_STEP_UNDERFLOW:
        raise IntegrationError(f"step size underflow at t = {t_reached:.6g} us", t_reached)
    if status == kernel.STATUS_MAX_STEPS:
        raise IntegrationError(f"step budget exhausted at t = {t_reached:.6g} us", t_reached)
    return t0, t1, y, samples


def evolve(g0: float, p: PhysicalParams, opts: IntegratorOptions | None = None) -> TrajectoryRecord:
    """Evolve one atom through its transit, starting in |u,0><u,0|.

    Returns the full trajectory record sampled at opts.n_samples uniform
    times over the integration window.
    """
    opts = opts or IntegratorOptions()
    if opts.n_samples < 2:
        raise ValueError("n_samples must be >= 2")
    t0, t1 = integration_window(p)
    times = np.linspace(t0, t1, opts.n_samples)
    _, _, _, samples = _run(g0, p, opts, times)
    rho_series = samples[:, :9].reshape(-1, 3, 3)
    return TrajectoryRecord(
        times=times,
        rho_series=rho_series,
        r_emit=2.0 * p.kappa * rho_series[:, 2, 2].real,
        p_emit_cumulative=samples[:, 9].real,
        p_spont_cumulative=samples[:, 10].real,
        theta_series=np.arctan2(pump_rabi(times, p), cavity_rabi(times, g0, p)),
        g0=g0,
    )


def transit_summary(g0: float, p: PhysicalParams, opts: IntegratorOptions | None = None):
    """Fast path for sweeps: (p_emit, p_spont, final trace) of one transit
    without building the sampled record.  Same kernel, same tolerances as
    evolve."""
    opts = opts or IntegratorOptions()
    _, _, y, _ = _run(g0, p, opts, None)
    trace = (y[0] + y[4] + y[8]).real
    return float(y[9].real), float(y[10].real), float(trace)


def emission_probability(rec: TrajectoryRecord) -> float:
    """Overall photon-emission probability: the final cumulative integral
    of the transient rate 2 kappa rho_33."""
    return rec.p_emit


def dark_state_population(rho: np.ndarray, theta: float) -> float:
    """Population <phi0|rho|phi0> of the dark state
    phi0 = cos(Theta)|u,0> - sin(Theta)|g,1>."""
    v = np.array([np.cos(theta), 0.0, -np.sin(theta)])
    return float(np.real(v @ np.asarray(rho) @ v))
