"""Averaging the emission probability over the atomic point of impact.

The atom's effective peak coupling g0(y, z) depends on where its
trajectory crosses the standing wave and the mode's transverse profile;
since the emission probability is highly non-linear in g0, the average
must be taken over emission probabilities, never over g0 itself.

Quadrature: tensor Gauss-Legendre over the slit aperture
y in [-S_y/2, S_y/2] and over one quarter standing-wave period
z in [0, lambda/4].  The quarter period is exact in the continuum
because the emission probability is even in g0 and |cos| repeats the
quarter-period profile four times per period.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import IntegrationError, IntegratorOptions, transit_summary
from .model import ImpactPoint, PhysicalParams, coupling_at_impact
from .parallel import thread_map

__all__ = ["QuadratureGrid", "EnsembleError", "impact_grid", "averaged_emission"]


class EnsembleError(RuntimeError):
    """Integration failed at one quadrature node."""

    def __init__(self, point: ImpactPoint, cause: Exception):
        super().__init__(f"transit integration failed at impact point {point}: {cause}")
        self.impact_point = point
        self.__cause__ = cause


@dataclass(frozen=True)
class QuadratureGrid:
    """Impact points with normalized positive weights (sum = 1)."""

    points: tuple[ImpactPoint, ...]
    weights: np.ndarray
    n_y: int
    n_z: int


def impact_grid(p: PhysicalParams, n_y: int = 21, n_z: int = 16) -> QuadratureGrid:
    """Tensor Gauss-Legendre grid over slit aperture and quarter period."""
    if n_y < 1 or n_z < 1:
        raise ValueError("n_y and n_z must be >= 1")
    xy, wy = np.polynomial.legendre.leggauss(n_y)
    xz, wz = np.polynomial.legendre.leggauss(n_z)
    ys = 0.5 * p.s_y * xy           # [-1,1] -> [-S_y/2, S_y/2]
    zs = p.wavelength / 8.0 * (xz + 1.0)  # [-1,1] -> [0, lambda/4]
    wy = wy / 2.0
    wz = wz / 2.0
    points = []
    weights = []
    for i in range(n_y):
        for j in range(n_z):
            points.append(ImpactPoint(y=float(ys[i]), z=float(zs[j])))
            weights.append(wy[i] * wz[j])
    return QuadratureGrid(
        points=tuple(points),
        weights=np.asarray(weights, dtype=float),
        n_y=n_y,
        n_z=n_z,
    )


def averaged_emission(
    p: PhysicalParams,
    grid: QuadratureGrid,
    opts: IntegratorOptions | None = None,
    workers: int | None = None,
) -> float:
    """Emission probability averaged over the impact-point distribution:
    sum_i w_i * P_emit(g0(y_i, z_i)).

    Nodes run in parallel; the weighted reduction is performed in fixed
    node order so the result does not depend on the worker count.
    """
    opts = opts or IntegratorOptions()

    def one_node(pt: ImpactPoint) -> float:
        g0 = float(coupling_at_impact(pt, p))
        try:
            p_emit, _, _ = transit_summary(g0, p, opts)
        except IntegrationError as exc:
            raise EnsembleError(pt, exc) from exc
        return p_emit

    values = np.asarray(thread_map(one_node, grid.points, workers=workers))
    return float(np.dot(grid.weights, values))
