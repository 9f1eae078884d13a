"""Universal functions E0(eta), X(eta), P(eta) of the quartic well.

The well is -1/2 d^2/dx^2 + eta x^2 - k x^4. For k > 0 it is unbounded
below, so the ground state is the quasi-bound state inside a hard-wall
box. Near and below eta = 0 the barrier gives no length scale and the
wall sits at a multiple of the quartic length k^(-1/6); further out it
sits inside the barrier. A point is certified when little probability
lies in the outer shell next to the walls. Energies and moments come
from second-order finite differences with grid doubling and one
Richardson step.
"""

import logging
import math
from collections.abc import Iterable

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.linalg import eigh_tridiagonal

from ..config import get_settings
from ..errors import UnresolvedPointError
from ..model.params import ModelParams

logger = logging.getLogger("twophoton.scaling.universal")

EXTRAPOLATED = ("e0", "x2", "p2", "x4", "wall_pressure")


class QuarticWellSpec(BaseModel):
    """Quartic coefficient and discretization policy."""

    model_config = ConfigDict(frozen=True)

    quartic_coeff: float = Field(description="k in eta x^2 - k x^4; k <= 0 confines")
    grid_points: int = Field(default=512, ge=500, description="Starting interval count")
    max_grid_points: int = Field(default=131_072, ge=500)
    rel_tol: float = Field(default=1e-7, gt=0, description="Grid-doubling tolerance on E0")
    eta_floor: float = Field(default=0.05, gt=0)
    tail: float = Field(default=40.0, gt=0, description="Target -ln(psi^2) at the wall")
    quartic_box: float = Field(default=1.0, gt=0, description="Wall at this many quartic lengths k^(-1/6)")
    tail_fraction: float = Field(default=0.8, gt=0, lt=1, description="Outer shell starts at this fraction of L")
    tail_mass_tol: float = Field(default=0.02, gt=0, lt=1, description="Largest certified mass in the outer shell")

    @classmethod
    def from_params(cls, params: ModelParams, quartic_coeff: float | None = None) -> "QuarticWellSpec":
        """Frozen coefficient omega1^4 / (4 omega) unless overridden."""
        settings = get_settings()
        k = quartic_coeff if quartic_coeff is not None else params.omega1**4 / (4 * params.omega)
        return cls(
            quartic_coeff=k,
            grid_points=settings.well_grid_points,
            max_grid_points=settings.well_max_grid_points,
            rel_tol=settings.well_rel_tol,
            eta_floor=settings.well_eta_floor,
            tail=settings.well_tail,
            quartic_box=settings.well_quartic_box,
            tail_fraction=settings.well_tail_fraction,
            tail_mass_tol=settings.well_tail_mass_tol,
        )

    @property
    def quartic_length(self) -> float:
        """k^(-1/6), where kinetic and quartic energies balance; inf for k = 0."""
        k = abs(self.quartic_coeff)
        return k ** (-1 / 6) if k > 0 else math.inf

    def box_half_width(self, eta: float) -> float:
        """Wall position L for a given eta."""
        k = self.quartic_coeff
        eta_eff = max(eta, self.eta_floor)
        harmonic = math.sqrt(self.tail / math.sqrt(2 * eta_eff))
        if k > 0:
            quartic = self.quartic_box * self.quartic_length
            if eta <= self.eta_floor:
                return quartic
            barrier = math.sqrt(eta / (2 * k))
            return min(harmonic, max(quartic, 0.9 * barrier))
        if k < 0:
            x_min = math.sqrt(max(-eta, 0.0) / (2 * abs(k)))
            quartic = x_min + (1.5 * self.tail / math.sqrt(2 * abs(k))) ** (1 / 3)
            return min(harmonic, quartic) if eta > 0 else quartic
        return harmonic


class ScalingPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    eta: float
    e0: float = Field(description="Universal ground energy E0(eta)")
    x2: float = Field(description="X(eta) = <x^2>")
    p2: float = Field(description="P(eta) = <p^2>")
    x4: float = Field(description="<x^4>")
    wall_pressure: float = Field(
        default=0.0, description="(L/2)(psi'(L)^2 + psi'(-L)^2), the box term of the virial identity"
    )
    resolved: bool = True
    tail_mass: float = Field(default=0.0, description="Probability beyond tail_fraction * L")
    grid_points: int = 0
    box_half_width: float = 0.0

    def virial_rhs(self, quartic_coeff: float) -> float:
        """<x V'(x)> plus the wall term; equals P for the exact box eigenstate."""
        return 2 * self.eta * self.x2 - 4 * quartic_coeff * self.x4 + self.wall_pressure

    @classmethod
    def unresolved(cls, eta: float, tail_mass: float, grid_points: int, half_width: float) -> "ScalingPoint":
        nan = float("nan")
        return cls(
            eta=eta,
            e0=nan,
            x2=nan,
            p2=nan,
            x4=nan,
            wall_pressure=nan,
            resolved=False,
            tail_mass=tail_mass,
            grid_points=grid_points,
            box_half_width=half_width,
        )


def _solve_grid(
    eta: float, k: float, half_width: float, intervals: int, tail_fraction: float = 0.8
) -> dict[str, float]:
    """Ground state on ``intervals`` uniform intervals of [-L, L] with psi(+-L) = 0."""
    h = 2 * half_width / intervals
    x = -half_width + h * np.arange(1, intervals)
    potential = eta * x**2 - k * x**4
    diagonal = 1 / h**2 + potential
    off_diagonal = np.full(intervals - 2, -1 / (2 * h**2))

    values, vectors = eigh_tridiagonal(diagonal, off_diagonal, select="i", select_range=(0, 0))
    psi = vectors[:, 0]
    psi = psi / np.linalg.norm(psi)
    density = psi**2

    padded = np.concatenate(([0.0], psi, [0.0]))
    # continuum slope at the walls from the last interior node; psi'' vanishes there
    slope_sq = (psi[0] ** 2 + psi[-1] ** 2) / h**3
    return {
        "e0": float(values[0]),
        "x2": float(density @ x**2),
        "x4": float(density @ x**4),
        "p2": float(np.sum(np.diff(padded) ** 2) / h**2),
        "wall_pressure": float(half_width / 2 * slope_sq),
        "tail_mass": float(density[np.abs(x) > tail_fraction * half_width].sum()),
    }


def solve_quartic_well(spec: QuarticWellSpec, eta: float) -> ScalingPoint:
    """
    Certified ground state of the quartic well at one eta.

    Raises:
        UnresolvedPointError: if grid doubling does not converge or too much
            probability sits next to the walls
    """
    half_width = spec.box_half_width(eta)
    intervals = spec.grid_points
    coarse = _solve_grid(eta, spec.quartic_coeff, half_width, intervals, spec.tail_fraction)

    while True:
        if 2 * intervals > spec.max_grid_points:
            raise UnresolvedPointError(
                f"eta={eta:g}: grid doubling did not converge by {intervals} intervals", eta=eta
            )
        intervals *= 2
        fine = _solve_grid(eta, spec.quartic_coeff, half_width, intervals, spec.tail_fraction)
        if abs(fine["e0"] - coarse["e0"]) < spec.rel_tol * max(1.0, abs(fine["e0"])):
            break
        coarse = fine

    if fine["tail_mass"] > spec.tail_mass_tol:
        raise UnresolvedPointError(
            f"eta={eta:g}: {fine['tail_mass']:.3g} of the probability lies beyond "
            f"{spec.tail_fraction:g}*L at L={half_width:.4g} (state pressed against the wall)",
            eta=eta,
        )

    # one Richardson step on the O(h^2) error
    extrapolated = {key: fine[key] + (fine[key] - coarse[key]) / 3 for key in EXTRAPOLATED}
    return ScalingPoint(
        eta=eta,
        resolved=True,
        tail_mass=fine["tail_mass"],
        grid_points=intervals,
        box_half_width=half_width,
        **extrapolated,
    )


def universal_functions(spec: QuarticWellSpec, eta_grid: Iterable[float]) -> list[ScalingPoint]:
    """Solve the well on each eta; failures come back flagged ``resolved=False``."""
    points = []
    for eta in eta_grid:
        eta = float(eta)
        if not math.isfinite(eta):
            raise ValueError(f"eta must be finite, got {eta}")
        try:
            points.append(solve_quartic_well(spec, eta))
        except UnresolvedPointError as e:
            logger.info(f"Unresolved universal point: {e}")
            half_width = spec.box_half_width(eta)
            grid = _solve_grid(eta, spec.quartic_coeff, half_width, spec.grid_points, spec.tail_fraction)
            points.append(ScalingPoint.unresolved(eta, grid["tail_mass"], spec.grid_points, half_width))
    return points
