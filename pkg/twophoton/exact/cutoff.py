"""Sector-resolved diagonalization with certified photon-cutoff convergence."""

import logging
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..config import get_settings
from ..errors import DomainError
from ..logging_config import debug_log
from ..model.hamiltonian import assemble_hamiltonian
from ..model.operators import hilbert_dim
from ..model.params import ModelParams, TruncationSpec
from ..model.parity import z4_sectors
from .observables import observables, standard_observables
from .solver import SolverMethod, lowest_eigenpairs

logger = logging.getLogger("twophoton.exact.cutoff")


class GroundStateSolution(BaseModel):
    """Lowest levels and ground-state observables at the final cutoff."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    params: ModelParams
    energy_levels: list[float] = Field(description="Lowest eigenvalues, ascending")
    ground_vector: np.ndarray = Field(exclude=True, repr=False)
    jz_per_atom: float = Field(description="<Jz>/N")
    jy2_per_atom2: float = Field(description="<Jy^2>/N^2")
    photon_number: float = Field(description="<a_dag a>")
    gap: float | None = Field(default=None, description="E1 - E0")
    n_max_used: int
    converged: bool
    residual: float = Field(description="||H v - E0 v|| of the ground state")
    energy_history: list[tuple[int, float]] = Field(default_factory=list)
    ground_sector: int = Field(description="q with Pi = i^q on the ground state")
    methods: list[str] = Field(default_factory=list, description="Solver path per sector")

    @property
    def ground_energy(self) -> float:
        return self.energy_levels[0]


@dataclass(frozen=True)
class SectorSpectrum:
    """Merged lowest levels across the Z4 sectors at one cutoff."""

    values: np.ndarray
    sectors: np.ndarray
    ground_vector: np.ndarray
    residual: float
    methods: list[str]


def solve_sectors(
    params: ModelParams,
    n_max: int,
    k: int | None = None,
    method: SolverMethod = "auto",
    dim_limit: int | None = None,
) -> SectorSpectrum:
    """
    Diagonalize each Z4 sector and merge the lowest k levels.

    Args:
        params: Physical parameters
        n_max: Photon cutoff
        k: Number of merged levels to keep
        method: Solver path per sector
        dim_limit: Hilbert dimension limit

    Returns:
        SectorSpectrum with ascending levels and their sector labels
    """
    k = k if k is not None else get_settings().eigen_count
    trunc = TruncationSpec().fixed(n_max)
    hamiltonian = assemble_hamiltonian(params, trunc, dim_limit=dim_limit)
    matrix = hamiltonian.matrix
    dim = hamiltonian.dim

    values: list[float] = []
    labels: list[int] = []
    vectors: list[tuple[np.ndarray, np.ndarray]] = []
    methods: list[str] = []
    for q, indices in z4_sectors(params.n_atoms, n_max).items():
        if indices.size == 0:
            continue
        block = matrix[indices][:, indices]
        result = lowest_eigenpairs(block, min(k, indices.size), method)
        methods.append(result.method)
        # #region debug
        debug_log("Sectors", f"Sector q={q} solved", {
            "dim": int(indices.size),
            "method": result.method,
            "lowest": float(result.values[0]),
        })
        # #endregion
        for value, vector in zip(result.values, result.vectors.T):
            values.append(float(value))
            labels.append(q)
            vectors.append((indices, vector))

    order = np.argsort(values, kind="stable")[:k]
    ground_indices, ground_block = vectors[order[0]]
    ground = np.zeros(dim)
    ground[ground_indices] = ground_block
    ground /= np.linalg.norm(ground)

    e0 = values[order[0]]
    residual = float(np.linalg.norm(matrix @ ground - e0 * ground))

    return SectorSpectrum(
        values=np.asarray(values)[order],
        sectors=np.asarray(labels)[order],
        ground_vector=ground,
        residual=residual,
        methods=methods,
    )


def _measure(params: ModelParams, n_max: int, vector: np.ndarray) -> dict[str, float]:
    values = observables(vector, standard_observables(params.n_atoms, n_max))
    n = params.n_atoms
    return {
        "jz_per_atom": values["jz"] / n,
        "jy2_per_atom2": values["jy2"] / n**2,
        "photon_number": values["photon_number"],
    }


def converge_cutoff(
    params: ModelParams,
    trunc: TruncationSpec | None = None,
    *,
    eigen_count: int | None = None,
    method: SolverMethod = "auto",
    dim_limit: int | None = None,
) -> GroundStateSolution:
    """
    Double the photon cutoff until the ground energy stops moving.

    Args:
        params: Physical parameters (g must be below omega/2)
        trunc: Starting cutoff, tolerance and ceiling
        eigen_count: Number of levels to keep
        method: Solver path per sector
        dim_limit: Hilbert dimension limit

    Returns:
        GroundStateSolution; ``converged`` is False when the ceiling or the
        dimension limit stopped the doubling first
    """
    if params.g >= params.g_collapse:
        raise DomainError(
            f"g={params.g:g} >= g_collapse={params.g_collapse:g} (spectral collapse: "
            "the Hamiltonian is unbounded below)",
            condition="collapse",
        )

    settings = get_settings()
    trunc = trunc or TruncationSpec.from_settings()
    dim_limit = dim_limit if dim_limit is not None else settings.dim_limit

    n_max = trunc.n_max
    history: list[tuple[int, float]] = []
    previous: dict[str, float] | None = None
    converged = False

    while True:
        spectrum = solve_sectors(params, n_max, k=eigen_count, method=method, dim_limit=dim_limit)
        e0 = float(spectrum.values[0])
        measured = _measure(params, n_max, spectrum.ground_vector)

        if history:
            change = abs(e0 - history[-1][1])
            drift = {key: abs(value - previous[key]) for key, value in measured.items()}
            # #region debug
            debug_log("Cutoff", f"n_max={n_max}", {"e0": e0, "dE0": change, **drift})
            # #endregion
            logger.debug(f"n_max={n_max}: E0={e0:.15g}, |dE0|={change:.3e}, drift={drift}")
            if change <= trunc.rel_tol * abs(e0):
                history.append((n_max, e0))
                converged = True
                break
        history.append((n_max, e0))
        previous = measured

        next_n_max = min(2 * n_max, trunc.n_max_ceiling)
        if next_n_max == n_max:
            logger.warning(
                f"Cutoff ceiling {trunc.n_max_ceiling} reached without convergence "
                f"at N={params.n_atoms}, g={params.g:g}"
            )
            break
        if hilbert_dim(params.n_atoms, next_n_max) > dim_limit:
            logger.warning(
                f"Dimension limit {dim_limit} stops doubling at n_max={n_max} "
                f"(N={params.n_atoms}, g={params.g:g})"
            )
            break
        n_max = next_n_max

    levels = [float(v) for v in spectrum.values]
    return GroundStateSolution(
        params=params,
        energy_levels=levels,
        ground_vector=spectrum.ground_vector,
        gap=levels[1] - levels[0] if len(levels) > 1 else None,
        n_max_used=n_max,
        converged=converged,
        residual=spectrum.residual,
        energy_history=history,
        ground_sector=int(spectrum.sectors[0]),
        methods=spectrum.methods,
        **measured,
    )
