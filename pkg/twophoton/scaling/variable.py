"""Scaling variable eta and its inverse."""

import math

from ..errors import DomainError
from ..model.params import ModelParams

SCALING_ALPHA = 2 / 3


def scaling_variable(params: ModelParams) -> float:
    """eta = (omega1^2 / 2)(1 - g'^2) N^(2/3); positive in the normal phase."""
    return params.omega1**2 / 2 * (1 - params.g_prime**2) * params.n_atoms**SCALING_ALPHA


def g_for_eta(params: ModelParams, eta: float) -> float:
    """Coupling at which ``params`` (same N, omega, omega1) has scaling variable eta."""
    radicand = 1 - 2 * eta / (params.omega1**2 * params.n_atoms**SCALING_ALPHA)
    if radicand < 0:
        raise DomainError(
            f"eta={eta:g} exceeds its g=0 value for N={params.n_atoms}", condition="domain"
        )
    return params.g_c * math.sqrt(radicand)
