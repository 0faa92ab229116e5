"""Physical parameters and the time/space dependence of the two couplings.

Internal unit system: angular frequencies in rad/us, lengths in um, times
in us, velocities in um/us.  Conversion from linear MHz (times 2*pi) and
from m/s (factor 1) happens once, in :mod:`vstirap.config`.

An atom falling with velocity ``v`` crosses the cavity mode (Gaussian
waist ``w_c``, centered at t = 0) and the transverse pump beam (waist
``w_p``, center displaced by ``delta_x`` along the trajectory).  Negative
``delta_x`` realizes the counter-intuitive order: cavity first, pump later.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PhysicalParams",
    "ImpactPoint",
    "pump_rabi",
    "cavity_rabi",
    "coupling_at_impact",
    "pulse_derivatives",
    "integration_window",
]

# Rb D2 line; sets the standing-wave period of the cavity mode.
DEFAULT_WAVELENGTH_UM = 0.78024


@dataclass(frozen=True)
class PhysicalParams:
    """All experiment constants, in internal units (rad/us, um, um/us).

    Attributes
    ----------
    g0_max : float
        Peak atom-cavity coupling at an antinode on the mode axis.
    omega0_peak : float
        Peak pump Rabi frequency Omega_0.
    delta : float
        Common (Raman-resonant) detuning of pump and cavity.
    kappa : float
        Cavity field decay rate.
    gamma : float
        Population decay rate of the excited level.
    w_c, w_p : float
        Cavity mode waist and pump beam waist.
    v : float
        Atomic fall velocity.
    delta_x : float
        Pump-beam displacement from the cavity axis along the atomic
        trajectory (signed; negative = cavity first).
    wavelength : float
        Standing-wave period of the cavity mode.
    s_y : float
        Width of the slit aperture constraining the transverse offset y.
    """

    g0_max: float
    omega0_peak: float
    delta: float
    kappa: float
    gamma: float
    w_c: float
    w_p: float
    v: float
    delta_x: float
    wavelength: float = DEFAULT_WAVELENGTH_UM
    s_y: float = 100.0

    def __post_init__(self):
        checks = [
            ("g0_max", self.g0_max > 0),
            ("omega0_peak", self.omega0_peak >= 0),
            ("kappa", self.kappa >= 0),
            ("gamma", self.gamma >= 0),
            ("w_c", self.w_c > 0),
            ("w_p", self.w_p > 0),
            ("v", self.v > 0),
            ("wavelength", self.wavelength > 0),
            ("s_y", self.s_y >= 0),
        ]
        for name, ok in checks:
            value = getattr(self, name)
            if not ok or not math.isfinite(value):
                raise ValueError(f"invalid PhysicalParams.{name} = {value!r}")
        if not math.isfinite(self.delta) or not math.isfinite(self.delta_x):
            raise ValueError("delta and delta_x must be finite")


@dataclass(frozen=True)
class ImpactPoint:
    """Where an atom crosses the cavity mode: transverse offset y from the
    mode axis and position z along the standing wave, both in um."""

    y: float
    z: float

    def validate(self, p: PhysicalParams) -> None:
        if abs(self.y) > p.s_y / 2 + 1e-12:
            raise ValueError(f"|y| = {abs(self.y)} exceeds slit half-width {p.s_y / 2}")
        if not (0.0 <= self.z < p.wavelength):
            raise ValueError(f"z = {self.z} outside [0, {p.wavelength})")


def pump_rabi(t, p: PhysicalParams):
    """Pump Rabi frequency Omega_P(t) = Omega_0 exp(-((v t + delta_x)/w_p)^2).

    Peaks at t = -delta_x / v.  Accepts scalar or array t.
    """
    x = (p.v * np.asarray(t, dtype=float) + p.delta_x) / p.w_p
    return p.omega0_peak * np.exp(-x * x)


def cavity_rabi(t, g0, p: PhysicalParams):
    """Cavity vacuum-Rabi frequency 2 g(t) = 2 g0 exp(-(v t / w_c)^2).

    Peaks at t = 0.  ``g0`` is the (signed) effective peak coupling of the
    given atom; accepts scalar or array t.
    """
    x = p.v * np.asarray(t, dtype=float) / p.w_c
    return 2.0 * g0 * np.exp(-x * x)


def coupling_at_impact(pt: ImpactPoint, p: PhysicalParams):
    """Signed effective peak coupling g0(y, z) for one atom.

    g0(y, z) = g0_max * cos(2 pi z / wavelength) * exp(-(y / w_c)^2).
    The waist variation along z is neglected (the mode's Rayleigh length
    exceeds the cavity length), so only the standing-wave factor and the
    transverse Gaussian enter.
    """
    return (
        p.g0_max
        * np.cos(2.0 * np.pi * pt.z / p.wavelength)
        * np.exp(-((pt.y / p.w_c) ** 2))
    )


def pulse_derivatives(t, g0, p: PhysicalParams):
    """Analytic time derivatives (dOmega_P/dt, d(2g)/dt) of the envelopes."""
    t = np.asarray(t, dtype=float)
    d_pump = pump_rabi(t, p) * (-2.0 * p.v * (p.v * t + p.delta_x) / p.w_p**2)
    d_cav = cavity_rabi(t, g0, p) * (-2.0 * p.v**2 * t / p.w_c**2)
    return d_pump, d_cav


def integration_window(p: PhysicalParams) -> tuple[float, float]:
    """Time window containing both pulse centers padded by 4 transit times.

    Outside its own 4-waist radius each Gaussian envelope is below e^-16
    of its peak, so truncating there changes pulse areas by < 1e-7
    relative.
    """
    pump_center = -p.delta_x / p.v
    pad = 4.0 * max(p.w_c, p.w_p) / p.v
    return min(0.0, pump_center) - pad, max(0.0, pump_center) + pad
