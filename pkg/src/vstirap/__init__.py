"""vstirap: vacuum-stimulated Raman adiabatic passage photon-source simulator."""

__version__ = "0.1.0"

from .model import ImpactPoint, PhysicalParams
from .dressed import EigenSystem, eigensystem
from .dynamics import IntegratorOptions, TrajectoryRecord, evolve
from .ensemble import QuadratureGrid, averaged_emission, impact_grid
from .sweep import SweepTable, find_optimum, sweep

__all__ = [
    "__version__",
    "PhysicalParams",
    "ImpactPoint",
    "EigenSystem",
    "eigensystem",
    "IntegratorOptions",
    "TrajectoryRecord",
    "evolve",
    "QuadratureGrid",
    "impact_grid",
    "averaged_emission",
    "SweepTable",
    "sweep",
    "find_optimum",
]
