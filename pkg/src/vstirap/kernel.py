"""Compiled integrator for the dissipative three-state transit dynamics.

The state vector is complex, length 11: the flattened 3x3 density matrix
in the basis (|u,0>, |e,0>, |g,1>) followed by the two cumulative loss
channels (photon emission through the cavity mirror, transverse
spontaneous emission).  Both channels are integrated inside the same ODE
so the budget identity

    p_emit + p_spont + tr(rho) = 1

holds at integrator accuracy at every accepted step.

The stepper is the Dormand-Prince embedded 5(4) pair with the standard
PI-free controller and FSAL reuse; requested sample times are filled by
cubic Hermite interpolation over accepted steps (the stage values k1/k7
provide exact endpoint derivatives).  Everything is numba-compiled and
releases the GIL so trajectories can run on a plain thread pool.
"""

from __future__ import annotations

import numpy as np
from numba import njit

STATUS_OK = 0
STATUS_STEP_UNDERFLOW = 1
STATUS_MAX_STEPS = 2

DEFAULT_MAX_STEPS = 20_000_000


@njit(cache=True, nogil=True)
def _rhs(t, y, out, om0, g0, dx, wc, wp, v, delta, kappa, gamma):
    """Master-equation right-hand side, fully unrolled.

    drho/dt = -i[H(t), rho] - {kappa P_g1 + (gamma/2) P_e0, rho},
    plus d(p_emit)/dt = 2 kappa rho_33 and d(p_spont)/dt = gamma rho_22.
    """
    xp = (v * t + dx) / wp
    op = om0 * np.exp(-xp * xp)
    xc = v * t / wc
    tg = 2.0 * g0 * np.exp(-xc * xc)

    a = -0.5 * op  # <u,0|H|e,0>
    b = -0.5 * tg  # <e,0|H|g,1>
    d = delta      # <e,0|H|e,0>

    y0 = y[0]; y1 = y[1]; y2 = y[2]
    y3 = y[3]; y4 = y[4]; y5 = y[5]
    y6 = y[6]; y7 = y[7]; y8 = y[8]

    # commutator [H, rho]
    c00 = a * (y3 - y1)
    c01 = a * (y4 - y0) - d * y1 - b * y2
    c02 = a * y5 - b * y1
    c10 = a * (y0 - y4) + d * y3 + b * y6
    c11 = a * (y1 - y3) + b * (y7 - y5)
    c12 = a * y2 + d * y5 + b * (y8 - y4)
    c20 = b * y3 - a * y7
    c21 = b * (y4 - y8) - a * y6 - d * y7
    c22 = b * (y5 - y7)

    hg = 0.5 * gamma
    out[0] = -1j * c00
    out[1] = -1j * c01 - hg * y1
    out[2] = -1j * c02 - kappa * y2
    out[3] = -1j * c10 - hg * y3
    out[4] = -1j * c11 - gamma * y4
    out[5] = -1j * c12 - (hg + kappa) * y5
    out[6] = -1j * c20 - kappa * y6
    out[7] = -1j * c21 - (hg + kappa) * y7
    out[8] = -1j * c22 - 2.0 * kappa * y8
    out[9] = 2.0 * kappa * y8
    out[10] = gamma * y4


@njit(cache=True, nogil=True)
def integrate(t0, t1, y0,
              om0, g0, dx, wc, wp, v, delta, kappa, gamma,
              rtol, atol, max_steps, t_samples, out_samples):
    """Integrate from t0 to t1; fill out_samples at t_samples.

    Returns (status, t_reached, y_final, n_steps).  t_samples must be
    ascending and within [t0, t1]; pass empty arrays to skip sampling.
    """
    n = y0.shape[0]
    y = y0.copy()
    ynew = np.empty(n, np.complex128)
    k1 = np.empty(n, np.complex128)
    k2 = np.empty(n, np.complex128)
    k3 = np.empty(n, np.complex128)
    k4 = np.empty(n, np.complex128)
    k5 = np.empty(n, np.complex128)
    k6 = np.empty(n, np.complex128)
    k7 = np.empty(n, np.complex128)
    ytmp = np.empty(n, np.complex128)

    span = t1 - t0
    t = t0
    h = span * 1.0e-4
    hmin = span * 1.0e-14
    # cap the step so the stage points can never straddle a whole pulse
    # hiding in an otherwise flat stretch of the window
    hmax = span / 8.0
    tend_eps = span * 1.0e-13

    nsamp = t_samples.shape[0]
    isamp = 0
    # samples that coincide with the start point
    while isamp < nsamp and t_samples[isamp] <= t0:
        out_samples[isamp, :] = y
        isamp += 1

    _rhs(t, y, k1, om0, g0, dx, wc, wp, v, delta, kappa, gamma)
    steps = 0
    while t1 - t > tend_eps:
        if steps >= max_steps:
            return STATUS_MAX_STEPS, t, y, steps
        if h < hmin:
            return STATUS_STEP_UNDERFLOW, t, y, steps
        if h > hmax:
            h = hmax
        if t + h > t1:
            h = t1 - t

        for i in range(n):
            ytmp[i] = y[i] + h * 0.2 * k1[i]
        _rhs(t + 0.2 * h, ytmp, k2, om0, g0, dx, wc, wp, v, delta, kappa, gamma)

        for i in range(n):
            ytmp[i] = y[i] + h * (0.075 * k1[i] + 0.225 * k2[i])
        _rhs(t + 0.3 * h, ytmp, k3, om0, g0, dx, wc, wp, v, delta, kappa, gamma)

        for i in range(n):
            ytmp[i] = y[i] + h * ((44.0 / 45.0) * k1[i] - (56.0 / 15.0) * k2[i] + (32.0 / 9.0) * k3[i])
        _rhs(t + 0.8 * h, ytmp, k4, om0, g0, dx, wc, wp, v, delta, kappa, gamma)

        for i in range(n):
            ytmp[i] = y[i] + h * ((19372.0 / 6561.0) * k1[i] - (25360.0 / 2187.0) * k2[i]
                                  + (64448.0 / 6561.0) * k3[i] - (212.0 / 729.0) * k4[i])
        _rhs(t + (8.0 / 9.0) * h, ytmp, k5, om0, g0, dx, wc, wp, v, delta, kappa, gamma)

        for i in range(n):
            ytmp[i] = y[i] + h * ((9017.0 / 3168.0) * k1[i] - (355.0 / 33.0) * k2[i]
                                  + (46732.0 / 5247.0) * k3[i] + (49.0 / 176.0) * k4[i]
                                  - (5103.0 / 18656.0) * k5[i])
        _rhs(t + h, ytmp, k6, om0, g0, dx, wc, wp, v, delta, kappa, gamma)

        for i in range(n):
            ynew[i] = y[i] + h * ((35.0 / 384.0) * k1[i] + (500.0 / 1113.0) * k3[i]
                                  + (125.0 / 192.0) * k4[i] - (2187.0 / 6784.0) * k5[i]
                                  + (11.0 / 84.0) * k6[i])
        _rhs(t + h, ynew, k7, om0, g0, dx, wc, wp, v, delta, kappa, gamma)

        # embedded 4th-order error estimate
        errnorm = 0.0
        for i in range(n):
            err = h * ((71.0 / 57600.0) * k1[i] - (71.0 / 16695.0) * k3[i]
                       + (71.0 / 1920.0) * k4[i] - (17253.0 / 339200.0) * k5[i]
                       + (22.0 / 525.0) * k6[i] - (1.0 / 40.0) * k7[i])
            ay = abs(y[i])
            aynew = abs(ynew[i])
            scale = atol + rtol * (ay if ay > aynew else aynew)
            q = abs(err) / scale
            errnorm += q * q
        errnorm = np.sqrt(errnorm / n)

        steps += 1
        if errnorm <= 1.0:
            tnew = t + h
            # cubic Hermite interpolation for samples inside this step
            while isamp < nsamp and t_samples[isamp] <= tnew:
                s = (t_samples[isamp] - t) / h
                h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s)
                h10 = s * (1.0 - s) * (1.0 - s)
                h01 = s * s * (3.0 - 2.0 * s)
                h11 = s * s * (s - 1.0)
                for i in range(n):
                    out_samples[isamp, i] = (h00 * y[i] + h01 * ynew[i]
                                             + h * (h10 * k1[i] + h11 * k7[i]))
                isamp += 1
            t = tnew
            for i in range(n):
                y[i] = ynew[i]
                k1[i] = k7[i]  # FSAL
            # once the manifold is empty nothing can change any output
            # beyond tolerance; freeze and stop stepping
            trace = y[0].real + y[4].real + y[8].real
            if trace < 1.0e-13:
                break
            if errnorm == 0.0:
                factor = 10.0
            else:
                factor = 0.9 * errnorm ** -0.2
                if factor > 10.0:
                    factor = 10.0
        else:
            factor = 0.9 * errnorm ** -0.2
            if factor < 0.2:
                factor = 0.2
        h = h * factor

    # trailing samples at (numerically) t1
    while isamp < nsamp:
        out_samples[isamp, :] = y
        isamp += 1
    return STATUS_OK, t, y, steps


_EMPTY_SAMPLES = np.empty(0, np.float64)
_EMPTY_OUT = np.empty((0, 11), np.complex128)


def run_transit(t0, t1, om0, g0, dx, wc, wp, v, delta, kappa, gamma,
                rtol, atol, max_steps=DEFAULT_MAX_STEPS, t_samples=None):
    """Drive the kernel for one atom starting in |u,0><u,0| at t0.

    Returns (status, t_reached, y_final, n_steps, samples) where samples
    has shape (len(t_samples), 11) or is None.
    """
    y0 = np.zeros(11, np.complex128)
    y0[0] = 1.0
    if t_samples is None:
        ts, out = _EMPTY_SAMPLES, _EMPTY_OUT
    else:
        ts = np.ascontiguousarray(t_samples, dtype=np.float64)
        out = np.empty((ts.shape[0], 11), np.complex128)
    status, t_reached, y, steps = integrate(
        float(t0), float(t1), y0,
        float(om0), float(g0), float(dx), float(wc), float(wp), float(v),
        float(delta), float(kappa), float(gamma),
        float(rtol), float(atol), int(max_steps), ts, out,
    )
    return status, t_reached, y, steps, (out if t_samples is not None else None)
