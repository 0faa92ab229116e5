"""Dressed states of the coupled pump-atom-cavity system.

Analytic eigensystem of the interaction Hamiltonian restricted to the
one-photon manifold (|u,0>, |e,0>, |g,1>), the mixing angles, the dark
state, its rotation rate, and the adiabaticity-ratio map used to locate
regimes where adiabatic following breaks down.

Conventions: Theta = atan2(Omega_P, 2g) in [0, pi) (continuous through
sign changes of g), Phi in (0, pi/2].  For Omega_P = g = 0 the mixing is
undefined and the pre-interaction convention Theta = 0, Phi = pi/2 is
returned with a degenerate flag.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .model import PhysicalParams, integration_window

__all__ = [
    "RATIO_CAP",
    "THETA_DOT_FLOOR",
    "EigenSystem",
    "MixingAngles",
    "NoRidgeError",
    "mixing_angles",
    "eigenfrequencies",
    "eigenstates",
    "eigensystem",
    "theta_dot",
    "adiabaticity_ratio",
    "adiabaticity_map",
    "theta_dot_ridge",
]

# Cap on |omega - omega_pm| / |Theta_dot| where Theta_dot -> 0; keeps maps
# finite and exceeds any physically meaningful ratio.
RATIO_CAP = 1.0e6
# |Theta_dot| below this (rad/us) counts as "dark state not rotating".
THETA_DOT_FLOOR = 1.0e-12


class NoRidgeError(ValueError):
    """Theta_dot vanishes identically; there is no rotation-rate maximum."""


class MixingAngles(NamedTuple):
    theta: float
    phi: float
    degenerate: bool


@dataclass(frozen=True)
class EigenSystem:
    """Eigenfrequencies, mixing angles and eigenvectors at one instant.

    Vectors are expressed in the basis (|u,0>, |e,0>, |g,1>); they are
    real because the Hamiltonian is real symmetric in this basis.
    """

    omega_0: float
    omega_plus: float
    omega_minus: float
    theta: float
    phi: float
    phi0: np.ndarray
    phi_plus: np.ndarray
    phi_minus: np.ndarray


def mixing_angles(g: float, omega_p: float, delta: float) -> MixingAngles:
    """Mixing angles (Theta, Phi) of the dressed-state basis.

    tan(Theta) = Omega_P / 2g and
    tan(Phi) = sqrt(4g^2 + Omega_P^2) / (sqrt(4g^2 + Omega_P^2 + Delta^2) - Delta).

    The Phi denominator is rationalized for delta > 0 to avoid
    cancellation.  Requires omega_p >= 0.
    """
    if omega_p < 0:
        raise ValueError(f"omega_p must be >= 0, got {omega_p}")
    twog = 2.0 * g
    omega_tilde = np.hypot(twog, omega_p)
    if omega_tilde == 0.0:
        return MixingAngles(theta=0.0, phi=np.pi / 2, degenerate=True)
    theta = float(np.arctan2(omega_p, twog))
    root = np.hypot(omega_tilde, delta)
    if delta > 0:
        denom = omega_tilde**2 / (root + delta)
    else:
        denom = root - delta
    phi = float(np.arctan2(omega_tilde, denom))
    return MixingAngles(theta=theta, phi=phi, degenerate=False)


def eigenfrequencies(g, omega_p, delta):
    """Eigenfrequencies (omega_0, omega_plus, omega_minus) of the coupled
    system: omega_0 = 0 and omega_pm = (delta +- sqrt(4g^2 + Omega_P^2 +
    delta^2)) / 2.  Broadcasts over array arguments.
    """
    g = np.asarray(g, dtype=float)
    omega_p = np.asarray(omega_p, dtype=float)
    delta = np.asarray(delta, dtype=float)
    root = np.sqrt(4.0 * g**2 + omega_p**2 + delta**2)
    omega_plus = 0.5 * (delta + root)
    omega_minus = 0.5 * (delta - root)
    zero = np.zeros(np.broadcast(g, omega_p, delta).shape)
    if zero.ndim == 0:
        return 0.0, float(omega_plus), float(omega_minus)
    return zero, omega_plus, omega_minus


def eigenstates(theta: float, phi: float):
    """Orthonormal dressed states (phi0, phi_plus, phi_minus) for given
    mixing angles, in the basis (|u,0>, |e,0>, |g,1>).

    phi0 has no excited-state component, which is what shields the
    transfer from spontaneous emission.
    """
    st, ct = np.sin(theta), np.cos(theta)
    sp, cp = np.sin(phi), np.cos(phi)
    phi0 = np.array([ct, 0.0, -st])
    phi_plus = np.array([cp * st, -sp, cp * ct])
    phi_minus = np.array([sp * st, cp, sp * ct])
    return phi0, phi_plus, phi_minus


def eigensystem(g: float, omega_p: float, delta: float) -> EigenSystem:
    """Full analytic eigensystem at one instant."""
    angles = mixing_angles(g, omega_p, delta)
    _, omega_plus, omega_minus = eigenfrequencies(g, omega_p, delta)
    phi0, phi_plus, phi_minus = eigenstates(angles.theta, angles.phi)
    return EigenSystem(
        omega_0=0.0,
        omega_plus=omega_plus,
        omega_minus=omega_minus,
        theta=angles.theta,
        phi=angles.phi,
        phi0=phi0,
        phi_plus=phi_plus,
        phi_minus=phi_minus,
    )


def _envelopes(t, delta_x, g0, p: PhysicalParams):
    """Pulse envelopes and their derivatives with an explicit displacement.

    Broadcasts t against delta_x; used by the map routines which scan the
    displacement axis.
    """
    t = np.asarray(t, dtype=float)
    delta_x = np.asarray(delta_x, dtype=float)
    xp = (p.v * t + delta_x) / p.w_p
    op = p.omega0_peak * np.exp(-xp * xp)
    xc = p.v * t / p.w_c
    tg = 2.0 * g0 * np.exp(-xc * xc)
    dop = op * (-2.0 * p.v / p.w_p) * xp
    dtg = tg * (-2.0 * p.v / p.w_c) * xc
    return op, tg, dop, dtg


def theta_dot(t, g0, p: PhysicalParams):
    """Rotation rate of the dark state,
    Theta_dot = (dOmega_P/dt * 2g - Omega_P * d(2g)/dt) / (4g^2 + Omega_P^2).

    Raises if both couplings vanish anywhere (angle velocity undefined).
    Broadcasts over array t.
    """
    op, tg, dop, dtg = _envelopes(t, p.delta_x, g0, p)
    denom = tg * tg + op * op
    if np.any(denom == 0.0):
        raise ValueError("theta_dot undefined where both couplings vanish")
    result = (dop * tg - op * dtg) / denom
    return float(result) if result.ndim == 0 else result


def adiabaticity_ratio(t, delta_x, g0, p: PhysicalParams):
    """min over the two bright branches of |omega - omega_pm| / |Theta_dot|.

    Large values mean adiabatic following of the dark state is safe.  The
    ratio is capped at RATIO_CAP (in particular where the dark state does
    not rotate, |Theta_dot| < THETA_DOT_FLOOR).  Broadcasts t against
    delta_x.
    """
    op, tg, dop, dtg = _envelopes(t, delta_x, g0, p)
    denom = tg * tg + op * op
    with np.errstate(divide="ignore", invalid="ignore"):
        th_dot = np.abs(np.where(denom > 0.0, (dop * tg - op * dtg) / np.where(denom > 0.0, denom, 1.0), 0.0))
    root = np.sqrt(denom + p.delta**2)
    gap = 0.5 * np.minimum(np.abs(p.delta + root), np.abs(p.delta - root))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(th_dot < THETA_DOT_FLOOR, RATIO_CAP, gap / np.maximum(th_dot, THETA_DOT_FLOOR))
    ratio = np.minimum(ratio, RATIO_CAP)
    return float(ratio) if ratio.ndim == 0 else ratio


def adiabaticity_map(t_grid, dx_grid, p: PhysicalParams) -> np.ndarray:
    """Adiabaticity-ratio matrix over a time grid (columns) and a
    pump-displacement grid (rows), for the on-axis antinode coupling
    g0_max."""
    t_grid = np.asarray(t_grid, dtype=float)
    dx_grid = np.asarray(dx_grid, dtype=float)
    for name, grid in (("t_grid", t_grid), ("dx_grid", dx_grid)):
        if grid.size == 0:
            raise ValueError(f"{name} must be nonempty")
        if grid.size > 1 and not np.all(np.diff(grid) > 0):
            raise ValueError(f"{name} must be strictly increasing")
    return adiabaticity_ratio(t_grid[None, :], dx_grid[:, None], p.g0_max, p)


def theta_dot_ridge(dx: float, g0: float, p: PhysicalParams, time_tol: float = 1e-3) -> float:
    """Time at which |Theta_dot| is maximal for displacement ``dx``.

    Located by a 512-point scan of the integration window followed by
    golden-section refinement to ``time_tol`` (us).  |Theta_dot| has a
    single interior maximum between the pulse centers for Gaussian
    envelopes; raises NoRidgeError when Theta_dot vanishes identically
    (proportional envelopes, or one coupling absent).
    """
    pp = replace(p, delta_x=dx)
    t0, t1 = integration_window(pp)
    ts = np.linspace(t0, t1, 512)
    vals = np.abs(theta_dot(ts, g0, pp))
    if vals.max() < THETA_DOT_FLOOR:
        raise NoRidgeError(f"|Theta_dot| vanishes on the whole window for dx={dx}")
    i = int(np.argmax(vals))
    a = ts[max(i - 1, 0)]
    b = ts[min(i + 1, len(ts) - 1)]

    def f(t):
        return -abs(theta_dot(t, g0, pp))

    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > time_tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return float(0.5 * (a + b))
