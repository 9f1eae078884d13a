"""Sparse operator containers and spin/photon factor matrices.

Spin factors act on the symmetric sector |j, m>, j = N/2, indexed by
k = m + j = 0..N. Photon factors act on the Fock states 0..n_max. The
product space is spin-major: index = k * (n_max + 1) + n.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np
import scipy.sparse as sparse

from ..errors import DimensionError


@dataclass(frozen=True)
class SpinPhotonOperator:
    """Immutable sparse matrix on a spin, photon or spin-photon space."""

    matrix: sparse.csr_matrix
    hermitian: bool = True
    label: str = ""

    def __post_init__(self) -> None:
        rows, cols = self.matrix.shape
        if rows != cols:
            raise DimensionError(f"{self.label or 'operator'} is not square: {rows}x{cols}")
        self.matrix.sum_duplicates()
        if self.hermitian and (self.matrix - self.matrix.conj().T).count_nonzero() != 0:
            raise ValueError(f"{self.label or 'operator'} flagged hermitian but is not")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.matrix.data)

    def entries(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Coordinate list (row, col, value) of the stored entries."""
        coo = self.matrix.tocoo()
        return coo.row, coo.col, coo.data

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()


class SpinOperators(NamedTuple):
    jx: SpinPhotonOperator
    jy: SpinPhotonOperator
    jz: SpinPhotonOperator
    jy2: SpinPhotonOperator


class PhotonOperators(NamedTuple):
    number: SpinPhotonOperator
    two_photon: SpinPhotonOperator


def _raising(n_atoms: int) -> sparse.csr_matrix:
    """J+ in the Condon-Shortley convention (real, non-negative)."""
    j = n_atoms / 2
    m = np.arange(n_atoms) - j
    ladder = np.sqrt(j * (j + 1) - m * (m + 1))
    return sparse.diags(ladder, -1, shape=(n_atoms + 1, n_atoms + 1), format="csr")


@lru_cache(maxsize=64)
def build_spin_operators(n_atoms: int) -> SpinOperators:
    """
    Collective angular-momentum matrices for j = N/2.

    Args:
        n_atoms: Number of atoms N (>= 1)

    Returns:
        SpinOperators with Jx, Jy (complex), Jz and Jy^2 (real)
    """
    if n_atoms < 1:
        raise DimensionError(f"n_atoms must be >= 1, got {n_atoms}")

    j_plus = _raising(n_atoms)
    j_minus = j_plus.T.tocsr()
    j = n_atoms / 2

    jx = ((j_plus + j_minus) / 2).tocsr()
    jy = ((j_plus - j_minus) / 2j).tocsr()
    jz = sparse.diags(np.arange(n_atoms + 1) - j, 0, format="csr")
    # Jy^2 = -(J+ - J-)^2 / 4 stays real
    antisym = (j_plus - j_minus).tocsr()
    jy2 = (-(antisym @ antisym) / 4).tocsr()
    jy2.eliminate_zeros()

    return SpinOperators(
        jx=SpinPhotonOperator(jx, label="Jx"),
        jy=SpinPhotonOperator(jy, label="Jy"),
        jz=SpinPhotonOperator(jz, label="Jz"),
        jy2=SpinPhotonOperator(jy2, label="Jy2"),
    )


@lru_cache(maxsize=64)
def build_photon_operators(n_max: int) -> PhotonOperators:
    """
    Photon number and pair operators truncated at n_max.

    Args:
        n_max: Photon-number cutoff (>= 2)

    Returns:
        PhotonOperators with n and a^2 + a_dag^2
    """
    if n_max < 2:
        raise DimensionError(f"n_max must be >= 2, got {n_max}")

    n = np.arange(n_max - 1)
    pair = np.sqrt((n + 1.0) * (n + 2.0))
    two_photon = sparse.diags([pair, pair], [2, -2], shape=(n_max + 1, n_max + 1), format="csr")
    number = sparse.diags(np.arange(n_max + 1, dtype=float), 0, format="csr")

    return PhotonOperators(
        number=SpinPhotonOperator(number, label="n"),
        two_photon=SpinPhotonOperator(two_photon, label="a2+ad2"),
    )


def embed(
    spin_factor: SpinPhotonOperator | None,
    photon_factor: SpinPhotonOperator | None,
    n_atoms: int,
    n_max: int,
    label: str = "",
) -> SpinPhotonOperator:
    """Kronecker product on the spin-major product space; None means identity."""
    spin = spin_factor.matrix if spin_factor is not None else sparse.identity(n_atoms + 1)
    photon = photon_factor.matrix if photon_factor is not None else sparse.identity(n_max + 1)
    if spin.shape[0] != n_atoms + 1 or photon.shape[0] != n_max + 1:
        raise DimensionError(
            f"factor sizes {spin.shape[0]}x{photon.shape[0]} do not match "
            f"N+1={n_atoms + 1}, n_max+1={n_max + 1}"
        )
    hermitian = (spin_factor is None or spin_factor.hermitian) and (
        photon_factor is None or photon_factor.hermitian
    )
    return SpinPhotonOperator(
        sparse.kron(spin, photon, format="csr"), hermitian=hermitian, label=label
    )


def hilbert_dim(n_atoms: int, n_max: int) -> int:
    """Dimension (N+1)(n_max+1) of the truncated product space."""
    return (n_atoms + 1) * (n_max + 1)
