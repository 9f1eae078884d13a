"""Ground-state expectation values."""

from collections.abc import Mapping
from functools import lru_cache
from types import MappingProxyType
from typing import TYPE_CHECKING

import numpy as np

from ..errors import DimensionError
from ..model.operators import SpinPhotonOperator, build_photon_operators, build_spin_operators, embed

if TYPE_CHECKING:
    from .cutoff import GroundStateSolution

NORM_TOLERANCE = 1e-10


@lru_cache(maxsize=32)
def standard_observables(n_atoms: int, n_max: int) -> Mapping[str, SpinPhotonOperator]:
    """Jz, Jy^2, a_dag a and Jx embedded in the product space."""
    spin = build_spin_operators(n_atoms)
    photon = build_photon_operators(n_max)
    return MappingProxyType(
        {
            "jz": embed(spin.jz, None, n_atoms, n_max, label="Jz"),
            "jy2": embed(spin.jy2, None, n_atoms, n_max, label="Jy2"),
            "photon_number": embed(None, photon.number, n_atoms, n_max, label="n"),
            "jx": embed(spin.jx, None, n_atoms, n_max, label="Jx"),
        }
    )


def expectation(vector: np.ndarray, operator: SpinPhotonOperator) -> float | complex:
    """<v|O|v>; real for hermitian O."""
    if vector.shape[0] != operator.dim:
        raise DimensionError(
            f"vector length {vector.shape[0]} does not match {operator.label} dim {operator.dim}"
        )
    value = np.vdot(vector, operator.matrix @ vector)
    return float(value.real) if operator.hermitian else complex(value)


def observables(
    state: "GroundStateSolution | np.ndarray",
    ops: Mapping[str, SpinPhotonOperator],
) -> dict[str, float | complex]:
    """
    Evaluate a set of operators on a normalized state.

    Args:
        state: GroundStateSolution or a raw coefficient vector
        ops: Operators keyed by name

    Returns:
        Expectation value per operator name
    """
    vector = state if isinstance(state, np.ndarray) else state.ground_vector
    norm = np.linalg.norm(vector)
    if abs(norm - 1.0) > NORM_TOLERANCE:
        raise ValueError(f"state is not normalized (norm={norm:.15g})")
    return {name: expectation(vector, op) for name, op in ops.items()}
