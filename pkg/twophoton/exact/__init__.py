"""Exact diagonalization with certified cutoff convergence."""

from .cutoff import GroundStateSolution, SectorSpectrum, converge_cutoff, solve_sectors
from .observables import expectation, observables, standard_observables
from .solver import EigenResult, lowest_eigenpairs
from .sweep import SweepRow, coupling_grid, sweep, sweep_async

__all__ = [
    "EigenResult",
    "lowest_eigenpairs",
    "GroundStateSolution",
    "SectorSpectrum",
    "solve_sectors",
    "converge_cutoff",
    "expectation",
    "observables",
    "standard_observables",
    "SweepRow",
    "coupling_grid",
    "sweep",
    "sweep_async",
]
