"""Concurrent parameter sweeps over converge_cutoff."""

import asyncio
import logging
from collections.abc import Sequence
from typing import Literal

from pydantic import BaseModel, Field

from ..config import get_settings
from ..model.params import ModelParams, TruncationSpec
from .cutoff import GroundStateSolution, converge_cutoff
from .solver import SolverMethod

logger = logging.getLogger("twophoton.exact.sweep")

RowStatus = Literal["ok", "unconverged", "failed"]


class SweepRow(BaseModel):
    """One sweep cell; failures are recorded, never raised."""

    params: ModelParams
    status: RowStatus
    solution: GroundStateSolution | None = None
    error: str | None = Field(default=None, description="Failure message if status=failed")

    @property
    def g(self) -> float:
        return self.params.g


async def _solve_row(
    params: ModelParams,
    trunc: TruncationSpec | None,
    method: SolverMethod,
    semaphore: asyncio.Semaphore,
) -> SweepRow:
    async with semaphore:
        try:
            solution = await asyncio.to_thread(converge_cutoff, params, trunc, method=method)
        except Exception as e:
            logger.warning(f"Sweep row N={params.n_atoms}, g={params.g:g} failed: {e}")
            return SweepRow(params=params, status="failed", error=str(e))

    status: RowStatus = "ok" if solution.converged else "unconverged"
    return SweepRow(params=params, status=status, solution=solution)


async def sweep_async(
    params_grid: Sequence[ModelParams],
    trunc: TruncationSpec | None = None,
    *,
    workers: int | None = None,
    method: SolverMethod = "auto",
) -> list[SweepRow]:
    """
    Run converge_cutoff over a parameter grid with bounded concurrency.

    Args:
        params_grid: Parameter sets, one row each
        trunc: Shared truncation policy
        workers: Maximum rows solved at once
        method: Solver path

    Returns:
        Rows in input order
    """
    if not params_grid:
        return []
    workers = workers or get_settings().workers
    semaphore = asyncio.Semaphore(workers)
    tasks = [_solve_row(p, trunc, method, semaphore) for p in params_grid]
    rows = await asyncio.gather(*tasks)
    failed = sum(1 for row in rows if row.status == "failed")
    logger.info(f"Sweep finished: {len(rows)} rows, {failed} failed")
    return list(rows)


def sweep(
    params_grid: Sequence[ModelParams],
    trunc: TruncationSpec | None = None,
    *,
    workers: int | None = None,
    method: SolverMethod = "auto",
) -> list[SweepRow]:
    """Synchronous wrapper around sweep_async."""
    return asyncio.run(sweep_async(params_grid, trunc, workers=workers, method=method))


def coupling_grid(base: ModelParams, g_values: Sequence[float]) -> list[ModelParams]:
    """Parameter sets differing only in g."""
    return [base.with_g(float(g)) for g in g_values]
