"""Data-collapse construction across system sizes."""

import asyncio
import logging
import math
from collections.abc import Sequence
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..config import get_settings
from ..errors import CollapseError, DomainError, UnresolvedPointError
from ..exact.cutoff import GroundStateSolution
from ..exact.sweep import SweepRow, sweep_async
from ..model.params import ModelParams, TruncationSpec
from .finite_size import Quantity, RegularPart, analytic_finite_size, singular_part
from .universal import QuarticWellSpec, solve_quartic_well
from .variable import g_for_eta, scaling_variable

logger = logging.getLogger("twophoton.scaling.collapse")

CollapseSource = Literal["ed", "analytic"]

WINDOW_TOLERANCE = 1e-9


class CollapseCurve(BaseModel):
    """Rescaled observable of one system size against eta."""

    model_config = ConfigDict(frozen=True)

    n_atoms: int
    quantity: Quantity
    exponent_used: str = Field(description="Rescaling exponent, e.g. '4/3'")
    points: list[tuple[float, float]] = Field(description="(eta, rescaled value), eta increasing")

    @field_validator("points")
    @classmethod
    def _check_points(cls, points: list[tuple[float, float]]) -> list[tuple[float, float]]:
        etas = [eta for eta, _ in points]
        if any(b <= a for a, b in zip(etas, etas[1:])):
            raise ValueError("eta must be strictly increasing within a curve")
        if not all(math.isfinite(value) for _, value in points):
            raise ValueError("rescaled values must be finite")
        return points

    @property
    def etas(self) -> np.ndarray:
        return np.array([eta for eta, _ in self.points])

    @property
    def values(self) -> np.ndarray:
        return np.array([value for _, value in self.points])


class CollapseResult(BaseModel):
    quantity: Quantity
    source: str
    curves: list[CollapseCurve]
    spread: float = Field(description="Max range across N over common bins / data range")
    bins: list[float] = Field(description="Common eta bins the spread was measured on")
    window: tuple[float, float] = Field(description="Requested eta window")
    covered: tuple[float, float] = Field(description="Eta range every curve reaches inside the window")

    @property
    def narrowed(self) -> bool:
        """True when the common bins do not span the requested window."""
        return covered_is_narrower(self.covered, self.window)


def covered_is_narrower(covered: tuple[float, float], window: tuple[float, float]) -> bool:
    slack = WINDOW_TOLERANCE * max(1.0, window[1] - window[0])
    return covered[0] > window[0] + slack or covered[1] < window[1] - slack


def make_curve(n_atoms: int, quantity: Quantity, points: Sequence[tuple[float, float]]) -> CollapseCurve:
    """Sort by eta and drop repeated eta values."""
    ordered: list[tuple[float, float]] = []
    for eta, value in sorted(points):
        if ordered and eta <= ordered[-1][0]:
            continue
        ordered.append((float(eta), float(value)))
    return CollapseCurve(
        n_atoms=n_atoms, quantity=quantity, exponent_used=quantity.exponent_label, points=ordered
    )


def collapse_spread(
    curves: Sequence[CollapseCurve],
    window: tuple[float, float] = (-2.0, 2.0),
    bins: int | None = None,
) -> tuple[float, np.ndarray]:
    """
    Spread of a set of curves on common eta bins.

    Returns:
        (spread, bin centres). Spread is the largest range across curves at
        any bin, divided by the range of all values inside the window. The
        bins span only the eta range every curve reaches, which can be
        narrower than the window.
    """
    bins = bins or get_settings().collapse_bins
    if len(curves) < 2:
        raise CollapseError(f"collapse needs at least 2 sizes, got {len(curves)}")
    if any(len(c.points) < 2 for c in curves):
        raise CollapseError("every curve needs at least 2 points")

    low = max(window[0], *(c.etas[0] for c in curves))
    high = min(window[1], *(c.etas[-1] for c in curves))
    if not high > low or bins < 2:
        raise CollapseError(
            f"fewer than 2 overlapping eta bins (overlap [{low:.4g}, {high:.4g}])"
        )
    grid = np.linspace(low, high, bins)

    sampled = np.array([np.interp(grid, c.etas, c.values) for c in curves])
    ranges = sampled.max(axis=0) - sampled.min(axis=0)

    in_window = np.concatenate(
        [c.values[(c.etas >= window[0]) & (c.etas <= window[1])] for c in curves]
    )
    data_range = float(in_window.max() - in_window.min()) if in_window.size else 0.0
    worst = float(ranges.max())
    if data_range == 0.0:
        return (0.0 if worst == 0.0 else math.inf), grid
    return worst / data_range, grid


def coupling_ceiling(params: ModelParams, fraction: float | None = None) -> float:
    """
    Largest coupling a collapse cell may use: g_c + fraction * (g_collapse - g_c).

    Beyond it the photon softens towards the spectral collapse and small
    sizes leave the critical regime.

    Raises:
        DomainError: if g_c is not below g_collapse
        ValueError: if fraction is outside (0, 1)
    """
    fraction = fraction if fraction is not None else get_settings().collapse_ceiling_fraction
    if not 0 < fraction < 1:
        raise ValueError(f"ceiling fraction must lie in (0, 1), got {fraction}")
    if params.g_c >= params.g_collapse:
        raise DomainError(
            f"g_c={params.g_c:g} >= g_collapse={params.g_collapse:g}: no critical window",
            condition="collapse",
        )
    return params.g_c + fraction * (params.g_collapse - params.g_c)


def couplings_for_etas(
    base: ModelParams,
    n_atoms: int,
    eta_grid: Sequence[float],
    fraction: float | None = None,
) -> list[float]:
    """Per-N couplings realising eta_grid; eta values past the coupling ceiling are dropped."""
    params = base.with_n_atoms(n_atoms)
    ceiling = coupling_ceiling(params, fraction)
    couplings = []
    skipped = []
    for eta in eta_grid:
        try:
            g = g_for_eta(params, float(eta))
        except DomainError:
            skipped.append(float(eta))
            continue
        if g > ceiling:
            skipped.append(float(eta))
            continue
        couplings.append(g)
    if skipped:
        logger.debug(f"N={n_atoms}: eta values {skipped} unreachable below g={ceiling:.6g}")
    return sorted(set(couplings))


def _measured(solution: GroundStateSolution, quantity: Quantity) -> float:
    if quantity is Quantity.ENERGY:
        return solution.ground_energy
    if quantity is Quantity.JZ:
        return solution.jz_per_atom
    return solution.jy2_per_atom2


def points_from_rows(
    rows: Sequence[SweepRow],
    quantity: Quantity,
    regular: RegularPart = RegularPart.CONSTANT,
) -> dict[int, list[tuple[float, float]]]:
    """(eta, singular part) per size from ED sweep rows; failed rows are skipped."""
    points: dict[int, list[tuple[float, float]]] = {}
    for row in rows:
        bucket = points.setdefault(row.params.n_atoms, [])
        if row.solution is None:
            continue
        value = singular_part(quantity, _measured(row.solution, quantity), row.params, regular)
        bucket.append((scaling_variable(row.params), value))
    return points


def _analytic_points(
    cells: dict[int, list[ModelParams]],
    quantity: Quantity,
    regular: RegularPart,
    spec: QuarticWellSpec,
) -> dict[int, list[tuple[float, float]]]:
    points: dict[int, list[tuple[float, float]]] = {n: [] for n in cells}
    for n, params_list in cells.items():
        for params in params_list:
            eta = scaling_variable(params)
            try:
                point = solve_quartic_well(spec, eta)
            except UnresolvedPointError as e:
                logger.info(f"Skipping analytic point N={n}: {e}")
                continue
            prediction = analytic_finite_size(params, point)
            value = singular_part(quantity, prediction.value(quantity), params, regular, zero_point=False)
            points[n].append((eta, value))
    return points


def _collapse_cells(
    sizes: Sequence[int],
    base: ModelParams,
    g_grid: Sequence[float] | None,
    eta_grid: Sequence[float] | None,
    ceiling_fraction: float | None = None,
) -> dict[int, list[ModelParams]]:
    if (g_grid is None) == (eta_grid is None):
        raise ValueError("pass exactly one of g_grid or eta_grid")
    cells: dict[int, list[ModelParams]] = {}
    for n in sizes:
        if g_grid is not None:
            couplings = sorted(set(float(g) for g in g_grid))
            if any(g <= 0 or g >= base.g_collapse for g in couplings):
                raise DomainError(
                    f"g grid must lie in (0, g_collapse={base.g_collapse:g})", condition="collapse"
                )
        else:
            couplings = couplings_for_etas(base, n, eta_grid, ceiling_fraction)
        cells[n] = [base.model_copy(update={"n_atoms": n, "g": g}) for g in couplings]
    return cells


def _assemble(
    quantity: Quantity,
    source: str,
    sizes: Sequence[int],
    points: dict[int, list[tuple[float, float]]],
    window: tuple[float, float],
    bins: int | None,
) -> CollapseResult:
    curves = [make_curve(n, quantity, points.get(n, [])) for n in sizes if len(points.get(n, [])) >= 2]
    missing = [n for n in sizes if len(points.get(n, [])) < 2]
    if missing:
        logger.warning(f"Collapse {quantity.value}: N={missing} left out (fewer than 2 points)")
    spread, grid = collapse_spread(curves, window=window, bins=bins)
    covered = (float(grid[0]), float(grid[-1]))
    if covered_is_narrower(covered, window):
        logger.warning(
            f"Collapse {quantity.value} ({source}) covers eta in [{covered[0]:.4g}, {covered[1]:.4g}] "
            f"only, requested [{window[0]:.4g}, {window[1]:.4g}]"
        )
    logger.info(f"Collapse {quantity.value} ({source}) over N={list(sizes)}: spread={spread:.4g}")
    return CollapseResult(
        quantity=quantity,
        source=source,
        curves=curves,
        spread=spread,
        bins=grid.tolist(),
        window=(float(window[0]), float(window[1])),
        covered=covered,
    )


async def build_collapse_set_async(
    n_list: Sequence[int],
    base: ModelParams,
    *,
    quantities: Sequence[Quantity | str] = tuple(Quantity),
    g_grid: Sequence[float] | None = None,
    eta_grid: Sequence[float] | None = None,
    source: CollapseSource = "ed",
    window: tuple[float, float] = (-2.0, 2.0),
    bins: int | None = None,
    regular: RegularPart = RegularPart.CONSTANT,
    trunc: TruncationSpec | None = None,
    spec: QuarticWellSpec | None = None,
    workers: int | None = None,
    ceiling_fraction: float | None = None,
) -> dict[Quantity, CollapseResult]:
    """
    Rescaled curves for several sizes and their collapse spread.

    One ED sweep feeds every requested quantity.

    Args:
        n_list: System sizes (at least two distinct)
        base: omega and omega1 shared by all sizes
        quantities: Any of energy, jz, jy2
        g_grid: Couplings shared by all sizes
        eta_grid: Alternatively, eta values converted to g per size
        source: ``ed`` or ``analytic``
        window: Eta window for the spread
        bins: Number of common bins
        regular: Energy background variant
        trunc: Cutoff policy for ED cells
        spec: Quartic well for the analytic source
        workers: Concurrent ED cells
        ceiling_fraction: Coupling ceiling for eta_grid cells, see coupling_ceiling

    Returns:
        CollapseResult per quantity
    """
    quantities = [Quantity(q) for q in quantities]
    sizes = sorted(set(int(n) for n in n_list))
    if len(sizes) < 2:
        raise CollapseError(f"collapse needs at least 2 sizes, got {sizes}")
    cells = _collapse_cells(sizes, base, g_grid, eta_grid, ceiling_fraction)

    results: dict[Quantity, CollapseResult] = {}
    if source == "ed":
        flat = [p for params in cells.values() for p in params]
        rows = await sweep_async(flat, trunc, workers=workers)
        for row in rows:
            if row.status == "unconverged":
                logger.warning(f"N={row.params.n_atoms}, g={row.g:g} used unconverged cutoff")
        for quantity in quantities:
            results[quantity] = _assemble(
                quantity, source, sizes, points_from_rows(rows, quantity, regular), window, bins
            )
    elif source == "analytic":
        spec = spec or QuarticWellSpec.from_params(base)
        for quantity in quantities:
            points = await asyncio.to_thread(_analytic_points, cells, quantity, regular, spec)
            results[quantity] = _assemble(quantity, source, sizes, points, window, bins)
    else:
        raise ValueError(f"Unknown collapse source: {source!r}")
    return results


async def build_collapse_async(
    n_list: Sequence[int],
    quantity: Quantity | str,
    base: ModelParams,
    **kwargs,
) -> CollapseResult:
    """Collapse of a single quantity."""
    quantity = Quantity(quantity)
    results = await build_collapse_set_async(n_list, base, quantities=[quantity], **kwargs)
    return results[quantity]


def build_collapse(
    n_list: Sequence[int],
    quantity: Quantity | str,
    base: ModelParams,
    **kwargs,
) -> CollapseResult:
    """Synchronous wrapper around build_collapse_async."""
    return asyncio.run(build_collapse_async(n_list, quantity, base, **kwargs))
