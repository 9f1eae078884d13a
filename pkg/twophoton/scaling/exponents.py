"""Critical exponents from log-log fits at g = g_c."""

import asyncio
import logging
import math
from collections.abc import Mapping, Sequence

import numpy as np
from pydantic import BaseModel, Field
from scipy.stats import linregress

from ..errors import DomainError, TwoPhotonError
from ..exact.sweep import sweep_async
from ..model.params import ModelParams, TruncationSpec
from .finite_size import Quantity, regular_part

logger = logging.getLogger("twophoton.scaling.exponents")

CRITICAL_MATCH_TOLERANCE = 1e-12


class PowerLawFit(BaseModel):
    slope: float
    stderr: float
    intercept: float
    sizes: list[int] = Field(description="Sizes that entered the fit")
    dropped: list[int] = Field(default_factory=list, description="Sizes with non-positive values")


class ExponentFit(PowerLawFit):
    quantity: Quantity
    raw: dict[int, float] = Field(default_factory=dict, description="Raw singular value per N")


def fit_power_law(sizes: Sequence[int], values: Sequence[float]) -> PowerLawFit:
    """
    Least-squares slope of log(value) against log(N).

    Non-positive values are dropped with a warning; fewer than three
    surviving points is an error.
    """
    if len(sizes) != len(values):
        raise ValueError(f"{len(sizes)} sizes but {len(values)} values")

    kept: list[tuple[int, float]] = []
    dropped: list[int] = []
    for n, value in zip(sizes, values):
        if value > 0 and math.isfinite(value):
            kept.append((int(n), float(value)))
        else:
            logger.warning(f"Dropping N={n} from power-law fit: value={value!r}")
            dropped.append(int(n))
    if len(kept) < 3:
        raise TwoPhotonError(f"power-law fit needs >= 3 positive points, got {len(kept)}")

    log_n = np.log([n for n, _ in kept])
    log_v = np.log([v for _, v in kept])
    fit = linregress(log_n, log_v)
    return PowerLawFit(
        slope=float(fit.slope),
        stderr=float(fit.stderr),
        intercept=float(fit.intercept),
        sizes=[n for n, _ in kept],
        dropped=dropped,
    )


def raw_singular(quantity: Quantity | str, value: float, params: ModelParams) -> float:
    """Observable minus its thermodynamic limit and known regular 1/N terms."""
    return value - regular_part(quantity, params)


async def _measure_at_critical(
    base: ModelParams,
    sizes: Sequence[int],
    trunc: TruncationSpec | None,
    workers: int | None,
) -> dict[int, dict[Quantity, float]]:
    grid = [base.model_copy(update={"n_atoms": n}) for n in sizes]
    rows = await sweep_async(grid, trunc, workers=workers)
    measured: dict[int, dict[Quantity, float]] = {}
    for row in rows:
        if row.solution is None:
            logger.warning(f"Exponent fit: N={row.params.n_atoms} failed: {row.error}")
            continue
        measured[row.params.n_atoms] = {
            Quantity.ENERGY: row.solution.ground_energy,
            Quantity.JZ: row.solution.jz_per_atom,
            Quantity.JY2: row.solution.jy2_per_atom2,
        }
    return measured


def measure_at_critical(
    params_at_gc: ModelParams,
    n_list: Sequence[int],
    trunc: TruncationSpec | None = None,
    workers: int | None = None,
) -> dict[int, dict[Quantity, float]]:
    """ED observables at g = g_c for each size (omega1 held fixed)."""
    return asyncio.run(_measure_at_critical(params_at_gc, n_list, trunc, workers))


def fit_exponent(
    n_list: Sequence[int],
    params_at_gc: ModelParams,
    quantity: Quantity | str,
    *,
    measured: Mapping[int, Mapping[Quantity, float]] | None = None,
    trunc: TruncationSpec | None = None,
    workers: int | None = None,
) -> ExponentFit:
    """
    Finite-size exponent of one observable at the critical coupling.

    Args:
        n_list: Sizes to fit (at least three)
        params_at_gc: omega, omega1 and g = g_c
        quantity: energy, jz or jy2
        measured: Precomputed ED observables per N; computed when omitted
        trunc: Cutoff policy for the ED runs
        workers: Concurrent ED runs

    Returns:
        ExponentFit with slope and standard error
    """
    quantity = Quantity(quantity)
    if abs(params_at_gc.g - params_at_gc.g_c) > CRITICAL_MATCH_TOLERANCE * params_at_gc.g_c:
        raise DomainError(
            f"exponent fits need g = g_c={params_at_gc.g_c:.12g}, got g={params_at_gc.g:.12g}",
            condition="criticality",
        )
    sizes = sorted(set(int(n) for n in n_list))
    if measured is None:
        measured = measure_at_critical(params_at_gc, sizes, trunc, workers)

    raw: dict[int, float] = {}
    for n in sizes:
        if n not in measured:
            continue
        params = params_at_gc.model_copy(update={"n_atoms": n})
        raw[n] = raw_singular(quantity, measured[n][quantity], params)

    fit = fit_power_law(list(raw), list(raw.values()))
    logger.info(f"Exponent {quantity.value}: slope={fit.slope:.4f} +/- {fit.stderr:.4f}")
    return ExponentFit(quantity=quantity, raw=raw, **fit.model_dump())
