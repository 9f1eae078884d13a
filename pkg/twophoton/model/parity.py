"""Z4 parity operator and symmetry-sector bookkeeping.

Phase convention: on |j, m> x |n> the parity acts as (-1)^k * i^n with
k = m + j, i.e. Pi = i^q with q = (2k + n) mod 4. Since j - m = N - k this
is exactly (-1)^N (-1)^(j-m) i^n. Jx changes k by one and
a^2 + a_dag^2 changes n by two, so every coupling preserves q.
"""

from typing import Literal

import numpy as np
import scipy.sparse as sparse

from .operators import SpinPhotonOperator

PHOTON_BLOCK_LABELS: dict[str, tuple[int, int]] = {"even": (0, 2), "odd": (1, 3)}


def parity_labels(n_atoms: int, n_max: int) -> np.ndarray:
    """q = (2k + n) mod 4 for every basis index, spin-major."""
    k = np.repeat(np.arange(n_atoms + 1), n_max + 1)
    n = np.tile(np.arange(n_max + 1), n_atoms + 1)
    return (2 * k + n) % 4


def parity_operator(n_atoms: int, n_max: int) -> SpinPhotonOperator:
    """Diagonal unitary Pi = i^q; Pi^4 = I and [H, Pi] = 0."""
    # exact phases; (1j)**q leaves rounding noise in the real part
    phases = np.choose(parity_labels(n_atoms, n_max), [1, 1j, -1, -1j]).astype(complex)
    return SpinPhotonOperator(sparse.diags(phases, 0, format="csr"), hermitian=False, label="Pi")


def parity_sectors(n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Fock indices split into even and odd photon numbers."""
    fock = np.arange(n_max + 1)
    return fock[fock % 2 == 0], fock[fock % 2 == 1]


def photon_block_indices(
    n_atoms: int,
    n_max: int,
    block: Literal["even", "odd"],
) -> np.ndarray:
    """Global indices of spin x (even|odd) Fock states."""
    if block not in PHOTON_BLOCK_LABELS:
        raise ValueError(f"block must be 'even' or 'odd', got {block!r}")
    n = np.tile(np.arange(n_max + 1), n_atoms + 1)
    return np.flatnonzero(n % 2 == (0 if block == "even" else 1))


def z4_sectors(n_atoms: int, n_max: int) -> dict[int, np.ndarray]:
    """
    Partition the basis into the four Pi eigenspaces.

    Returns:
        Mapping q -> sorted global indices with Pi = i^q on that sector
    """
    labels = parity_labels(n_atoms, n_max)
    return {q: np.flatnonzero(labels == q) for q in range(4)}
