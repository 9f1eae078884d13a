"""Lowest-eigenpair solvers for real symmetric sparse matrices.

Three paths share one residual certificate:

- ``dense``: LAPACK subset ``eigh``; used up to ``dense_limit``.
- ``banded``: exact eigenvalues from the band storage, vectors from
  shift-invert Lanczos just below the lowest eigenvalue. Sector matrices
  in spin-major order have a bandwidth of about n_max/4, which keeps this
  path cheap where plain Lanczos struggles with near-degenerate levels.
- ``lanczos``: implicitly restarted Lanczos for the smallest algebraic
  eigenvalues.
"""

import logging
from dataclasses import dataclass
from typing import Literal

import numpy as np
import scipy.linalg
import scipy.sparse as sparse
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from ..config import get_settings
from ..errors import DimensionError, SolverError
from ..model.operators import SpinPhotonOperator

logger = logging.getLogger("twophoton.exact.solver")

SolverMethod = Literal["auto", "dense", "banded", "lanczos"]


@dataclass(frozen=True)
class EigenResult:
    """Lowest eigenpairs, ascending, with per-pair residual norms."""

    values: np.ndarray
    vectors: np.ndarray
    residuals: np.ndarray
    method: str

    @property
    def max_residual(self) -> float:
        return float(self.residuals.max()) if self.residuals.size else 0.0


def bandwidth(matrix: sparse.spmatrix) -> int:
    """Largest |row - col| over the stored entries."""
    coo = matrix.tocoo()
    if coo.nnz == 0:
        return 0
    return int(np.abs(coo.row - coo.col).max())


def start_vector(dim: int, seed: int) -> np.ndarray:
    """Deterministic pseudo-random unit vector."""
    rng = np.random.default_rng(seed)
    v0 = rng.standard_normal(dim)
    return v0 / np.linalg.norm(v0)


def _as_csr(operator: SpinPhotonOperator | sparse.spmatrix | np.ndarray) -> sparse.csr_matrix:
    if isinstance(operator, SpinPhotonOperator):
        if not operator.hermitian:
            raise ValueError(f"{operator.label or 'operator'} is not hermitian")
        return operator.matrix
    return sparse.csr_matrix(operator)


def _choose_method(dim: int, k: int, band: int, dense_limit: int, max_bandwidth: int) -> str:
    if dim <= dense_limit or k >= dim - 1:
        return "dense"
    if band <= max_bandwidth:
        return "banded"
    return "lanczos"


def _solve_dense(matrix: sparse.csr_matrix, k: int) -> tuple[np.ndarray, np.ndarray]:
    return scipy.linalg.eigh(matrix.toarray(), subset_by_index=[0, k - 1])


def _solve_banded(
    matrix: sparse.csr_matrix,
    k: int,
    band: int,
    seed: int,
    maxiter: int | None,
) -> tuple[np.ndarray, np.ndarray]:
    dim = matrix.shape[0]
    coo = sparse.tril(matrix).tocoo()
    lower = np.zeros((band + 1, dim), dtype=matrix.dtype)
    lower[coo.row - coo.col, coo.col] = coo.data

    values = scipy.linalg.eig_banded(
        lower, lower=True, eigvals_only=True, select="i", select_range=(0, k - 1)
    )
    spread = values[-1] - values[0]
    sigma = values[0] - (1e-6 * max(1.0, abs(values[0])) + 0.01 * spread)

    try:
        _, vectors = eigsh(
            matrix.tocsc(),
            k=k,
            sigma=sigma,
            which="LM",
            v0=start_vector(dim, seed),
            maxiter=maxiter,
        )
    except ArpackNoConvergence as e:
        raise SolverError(f"shift-invert Lanczos did not converge: {e}") from e

    # ARPACK returns pairs by distance to sigma; reorder by Rayleigh quotient
    rayleigh = np.einsum("ij,ij->j", vectors, matrix @ vectors)
    order = np.argsort(rayleigh)
    return values, vectors[:, order]


def _solve_lanczos(
    matrix: sparse.csr_matrix,
    k: int,
    tol: float,
    maxiter: int | None,
    seed: int,
) -> tuple[np.ndarray, np.ndarray]:
    dim = matrix.shape[0]
    ncv = min(dim, max(2 * k + 1, 40))
    try:
        return eigsh(
            matrix,
            k=k,
            which="SA",
            tol=tol,
            maxiter=maxiter,
            ncv=ncv,
            v0=start_vector(dim, seed),
        )
    except ArpackNoConvergence as e:
        residual = None
        if e.eigenvectors is not None and e.eigenvectors.size:
            partial = matrix @ e.eigenvectors - e.eigenvectors * e.eigenvalues
            residual = float(np.linalg.norm(partial, axis=0).max())
        raise SolverError(
            f"Lanczos did not converge ({len(e.eigenvalues)}/{k} pairs)", residual=residual
        ) from e


def lowest_eigenpairs(
    operator: SpinPhotonOperator | sparse.spmatrix | np.ndarray,
    k: int | None = None,
    method: SolverMethod = "auto",
    *,
    dense_limit: int | None = None,
    max_bandwidth: int | None = None,
    tol: float | None = None,
    maxiter: int | None = None,
    seed: int | None = None,
    residual_tol: float | None = None,
) -> EigenResult:
    """
    Compute the k smallest eigenpairs of a hermitian real matrix.

    Args:
        operator: Hermitian operator or raw symmetric matrix
        k: Number of eigenpairs (default from settings, capped at dim)
        method: auto, dense, banded or lanczos
        dense_limit: Largest dimension solved densely by ``auto``
        max_bandwidth: Largest bandwidth sent to the banded path by ``auto``
        tol: ARPACK tolerance (0 means machine precision)
        maxiter: ARPACK iteration cap
        seed: Start-vector seed
        residual_tol: Relative residual bound certifying each pair

    Returns:
        EigenResult with ascending eigenvalues and orthonormal vectors

    Raises:
        SolverError: if the solver fails or a residual exceeds the bound
    """
    settings = get_settings()
    k = k if k is not None else settings.eigen_count
    dense_limit = dense_limit if dense_limit is not None else settings.dense_limit
    max_bandwidth = max_bandwidth if max_bandwidth is not None else settings.max_bandwidth
    tol = tol if tol is not None else settings.lanczos_tol
    maxiter = maxiter if maxiter is not None else settings.lanczos_maxiter
    seed = seed if seed is not None else settings.lanczos_seed
    residual_tol = residual_tol if residual_tol is not None else settings.residual_tol

    matrix = _as_csr(operator)
    rows, cols = matrix.shape
    if rows != cols:
        raise DimensionError(f"matrix is not square: {rows}x{cols}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    dim = rows
    k = min(k, dim)

    band = bandwidth(matrix)
    chosen = method
    if method == "auto":
        chosen = _choose_method(dim, k, band, dense_limit, max_bandwidth)
    elif method != "dense" and k >= dim - 1:
        # ARPACK needs k < dim - 1
        chosen = "dense"

    logger.debug(f"Solving dim={dim}, k={k}, bandwidth={band} with method={chosen}")

    if chosen == "dense":
        values, vectors = _solve_dense(matrix, k)
    elif chosen == "banded":
        values, vectors = _solve_banded(matrix, k, band, seed, maxiter)
    elif chosen == "lanczos":
        values, vectors = _solve_lanczos(matrix, k, tol, maxiter, seed)
    else:
        raise ValueError(f"Unknown solver method: {method!r}")

    order = np.argsort(values)
    values = np.asarray(values)[order]
    vectors = np.asarray(vectors)[:, order]

    residuals = np.linalg.norm(matrix @ vectors - vectors * values, axis=0)
    bound = residual_tol * np.maximum(1.0, np.abs(values))
    if np.any(residuals > bound):
        worst = int(np.argmax(residuals / bound))
        raise SolverError(
            f"{chosen} solver residual {residuals[worst]:.3e} exceeds "
            f"{bound[worst]:.3e} for eigenvalue {values[worst]:.12g}",
            residual=float(residuals[worst]),
        )

    return EigenResult(values=values, vectors=vectors, residuals=residuals, method=chosen)
