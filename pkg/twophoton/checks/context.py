"""Shared inputs and memoized ED runs for the acceptance checks."""

import threading

import numpy as np

from ..config import get_settings
from ..exact.sweep import SweepRow, coupling_grid, sweep
from ..model.params import ModelParams, TruncationSpec
from ..scaling.exponents import measure_at_critical
from ..scaling.finite_size import Quantity


class VerifyContext:
    """Parameters of the acceptance runs; expensive sweeps are computed once."""

    def __init__(
        self,
        omega: float | None = None,
        omega1: float | None = None,
        trunc: TruncationSpec | None = None,
        workers: int | None = None,
        crossval_size: int = 100,
        crossval_points: int = 40,
        critical_sizes: tuple[int, ...] = (20, 40, 80, 160),
        collapse_sizes: tuple[int, ...] = (5, 10, 30, 50, 100),
        seed: int = 0,
    ):
        settings = get_settings()
        self.omega = omega if omega is not None else settings.omega
        self.omega1 = omega1 if omega1 is not None else settings.omega1
        self.trunc = trunc or TruncationSpec.from_settings()
        self.workers = workers or settings.workers
        self.crossval_size = crossval_size
        self.crossval_points = crossval_points
        self.critical_sizes = critical_sizes
        self.collapse_sizes = collapse_sizes
        self.seed = seed

        self._lock = threading.Lock()
        self._crossval_rows: list[SweepRow] | None = None
        self._critical: dict[int, dict[Quantity, float]] | None = None

    def base(self, n_atoms: int, g: float = 0.0) -> ModelParams:
        return ModelParams(omega=self.omega, omega1=self.omega1, g=g, n_atoms=n_atoms)

    def crossval_couplings(self) -> np.ndarray:
        """Evenly spaced couplings strictly inside (0, g_collapse)."""
        g_collapse = self.omega / 2
        return np.linspace(0.0, g_collapse, self.crossval_points + 2)[1:-1]

    def crossval_rows(self) -> list[SweepRow]:
        with self._lock:
            if self._crossval_rows is None:
                grid = coupling_grid(self.base(self.crossval_size), self.crossval_couplings())
                self._crossval_rows = sweep(grid, self.trunc, workers=self.workers)
            return self._crossval_rows

    def critical_measurements(self) -> dict[int, dict[Quantity, float]]:
        with self._lock:
            if self._critical is None:
                params = self.base(self.critical_sizes[0])
                params = params.with_g(params.g_c)
                self._critical = measure_at_critical(
                    params, self.critical_sizes, self.trunc, self.workers
                )
            return self._critical
