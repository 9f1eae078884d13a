"""Model core: parameters, operators, Hamiltonian and Z4 parity."""

from .hamiltonian import assemble_hamiltonian
from .operators import (
    PhotonOperators,
    SpinOperators,
    SpinPhotonOperator,
    build_photon_operators,
    build_spin_operators,
    embed,
    hilbert_dim,
)
from .params import ModelParams, TruncationSpec
from .parity import parity_labels, parity_operator, parity_sectors, photon_block_indices, z4_sectors

__all__ = [
    "ModelParams",
    "TruncationSpec",
    "SpinPhotonOperator",
    "SpinOperators",
    "PhotonOperators",
    "build_spin_operators",
    "build_photon_operators",
    "embed",
    "hilbert_dim",
    "assemble_hamiltonian",
    "parity_labels",
    "parity_operator",
    "parity_sectors",
    "photon_block_indices",
    "z4_sectors",
]
