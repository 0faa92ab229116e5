"""Displacement x pump-intensity sweeps of the averaged emission probability.

Every (delta_x, Omega_0) cell is an independent impact-point ensemble;
all transits of the whole sweep are dispatched to one flat task list for
load balance.  Reductions happen in fixed index order, so reruns with any
worker count produce identical tables.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .dynamics import IntegrationError, IntegratorOptions, transit_summary
from .ensemble import QuadratureGrid, impact_grid
from .model import PhysicalParams, coupling_at_impact
from .parallel import thread_map

__all__ = ["SweepTable", "sweep", "find_optimum"]


@dataclass(frozen=True)
class SweepTable:
    """Grid of ensemble-averaged emission probabilities.

    pbar[i, j] belongs to delta_x = dx_values[i], Omega_0 =
    omega0_values[j]; failed cells hold NaN and are listed in
    metadata["failures"].  The metadata block carries every input needed
    to reproduce each cell.
    """

    dx_values: np.ndarray
    omega0_values: np.ndarray
    pbar: np.ndarray
    metadata: dict


def sweep(
    p_base: PhysicalParams,
    dx_values,
    omega0_values,
    grid: QuadratureGrid | None = None,
    opts: IntegratorOptions | None = None,
    workers: int | None = None,
) -> SweepTable:
    """Run averaged_emission for every (delta_x, Omega_0) combination."""
    dx_values = np.asarray(dx_values, dtype=float)
    omega0_values = np.asarray(omega0_values, dtype=float)
    if dx_values.size == 0 or omega0_values.size == 0:
        raise ValueError("sweep axes must be nonempty")
    if not (np.all(np.isfinite(dx_values)) and np.all(np.isfinite(omega0_values))):
        raise ValueError("sweep axes must be finite")
    grid = grid or impact_grid(p_base)
    opts = opts or IntegratorOptions()

    n_dx, n_om, n_nodes = dx_values.size, omega0_values.size, len(grid.points)
    g0_nodes = [float(coupling_at_impact(pt, p_base)) for pt in grid.points]

    tasks = [
        (i, j, k)
        for i in range(n_dx)
        for j in range(n_om)
        for k in range(n_nodes)
    ]

    def one_task(task):
        i, j, k = task
        p = replace(p_base, delta_x=float(dx_values[i]), omega0_peak=float(omega0_values[j]))
        try:
            p_emit, _, _ = transit_summary(g0_nodes[k], p, opts)
            return p_emit
        except IntegrationError as exc:
            return exc

    results = thread_map(one_task, tasks, workers=workers)

    node_vals = np.empty((n_dx, n_om, n_nodes))
    failures: list[dict] = []
    failed = np.zeros((n_dx, n_om), dtype=bool)
    for (i, j, k), res in zip(tasks, results):
        if isinstance(res, Exception):
            failed[i, j] = True
            failures.append({"dx_index": i, "omega0_index": j, "node_index": k, "error": str(res)})
            node_vals[i, j, k] = np.nan
        else:
            node_vals[i, j, k] = res

    pbar = np.empty((n_dx, n_om))
    for i in range(n_dx):
        for j in range(n_om):
            pbar[i, j] = np.nan if failed[i, j] else float(np.dot(grid.weights, node_vals[i, j]))

    from . import __version__

    metadata = {
        "tool": "vstirap",
        "version": __version__,
        "params": {
            "g0_max": p_base.g0_max,
            "omega0_peak": p_base.omega0_peak,
            "delta": p_base.delta,
            "kappa": p_base.kappa,
            "gamma": p_base.gamma,
            "w_c": p_base.w_c,
            "w_p": p_base.w_p,
            "v": p_base.v,
            "delta_x": p_base.delta_x,
            "wavelength": p_base.wavelength,
            "s_y": p_base.s_y,
        },
        "units": {"frequencies": "rad/us", "lengths": "um", "times": "us"},
        "n_y": grid.n_y,
        "n_z": grid.n_z,
        "rtol": opts.rtol,
        "atol": opts.atol,
        "failures": failures,
    }
    return SweepTable(dx_values=dx_values, omega0_values=omega0_values, pbar=pbar, metadata=metadata)


def find_optimum(table: SweepTable, omega0_index: int) -> tuple[float, float]:
    """Displacement of maximal averaged emission for one pump intensity.

    Parabolic refinement through the discrete argmax and its neighbors;
    ties break toward the more negative (counter-intuitive) displacement.
    """
    col = table.pbar[:, omega0_index]
    dx = table.dx_values
    finite = np.isfinite(col)
    if finite.sum() < 3:
        raise ValueError(f"column {omega0_index} has fewer than 3 finite entries")
    best = np.nanmax(col)
    candidates = np.flatnonzero(finite & (col == best))
    i = int(candidates[np.argmin(dx[candidates])])

    if 0 < i < len(dx) - 1 and finite[i - 1] and finite[i + 1]:
        x0, x1, x2 = dx[i - 1], dx[i], dx[i + 1]
        f0, f1, f2 = col[i - 1], col[i], col[i + 1]
        d01 = (f1 - f0) / (x1 - x0)
        d12 = (f2 - f1) / (x2 - x1)
        curv = (d12 - d01) / (x2 - x0)
        if curv < 0.0:
            x_star = 0.5 * (x0 + x1) - 0.5 * d01 / curv
            x_star = float(np.clip(x_star, x0, x2))
            # parabola through the three points, evaluated at the vertex
            p_star = f1 + d01 * (x_star - x1) + curv * (x_star - x0) * (x_star - x1)
            return x_star, float(p_star)
    return float(dx[i]), float(col[i])
