"""Assembly of the truncated two-photon Dicke Hamiltonian."""

import logging

import scipy.sparse as sparse

from ..config import get_settings
from ..errors import DimensionError
from .operators import SpinPhotonOperator, build_photon_operators, build_spin_operators, hilbert_dim
from .params import ModelParams, TruncationSpec

logger = logging.getLogger("twophoton.model.hamiltonian")


def assemble_hamiltonian(
    params: ModelParams,
    trunc: TruncationSpec,
    dim_limit: int | None = None,
) -> SpinPhotonOperator:
    """
    Build H = delta*Jz + omega*n + (2g/N)*Jx*(a^2 + a_dag^2).

    Args:
        params: Physical parameters
        trunc: Photon cutoff
        dim_limit: Maximum allowed dimension (default from settings)

    Returns:
        Real symmetric operator on the spin-major product space
    """
    dim_limit = dim_limit if dim_limit is not None else get_settings().dim_limit
    dim = hilbert_dim(params.n_atoms, trunc.n_max)
    if dim > dim_limit:
        raise DimensionError(
            f"Hilbert dimension {dim} = ({params.n_atoms}+1)({trunc.n_max}+1) "
            f"exceeds dim_limit={dim_limit}"
        )

    spin = build_spin_operators(params.n_atoms)
    photon = build_photon_operators(trunc.n_max)
    spin_id = sparse.identity(params.n_atoms + 1, format="csr")
    photon_id = sparse.identity(trunc.n_max + 1, format="csr")

    matrix = (
        params.delta * sparse.kron(spin.jz.matrix, photon_id, format="csr")
        + params.omega * sparse.kron(spin_id, photon.number.matrix, format="csr")
        + (2 * params.g / params.n_atoms)
        * sparse.kron(spin.jx.matrix, photon.two_photon.matrix, format="csr")
    ).tocsr()
    matrix.eliminate_zeros()

    logger.debug(
        f"Assembled H: N={params.n_atoms}, n_max={trunc.n_max}, dim={dim}, nnz={matrix.nnz}"
    )
    return SpinPhotonOperator(matrix, hermitian=True, label="H")
