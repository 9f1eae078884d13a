"""Effective theory of the normal phase (g < g_c)."""

import math

from pydantic import BaseModel, ConfigDict, Field

from ..errors import DomainError
from ..model.params import ModelParams


class NormalPhaseResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    epsilon1: float = Field(description="Excitation energy")
    eg1: float = Field(description="Ground-state energy")
    zeta: float = Field(description="Squeezing parameter of the atomic mode")
    second_order: bool = Field(description="Whether the 1/N^2 term is included")


def normal_phase(params: ModelParams, second_order: bool = True) -> NormalPhaseResult:
    """
    Excitation energy, ground energy and squeezing below g_c.

    The 1/N^2 term of the ground energy diverges as g -> g_c; pass
    ``second_order=False`` to keep only the O(1) + O(1/N) part.
    """
    g, g_c = params.g, params.g_c
    if g >= g_c:
        raise DomainError(
            f"g={g:g} >= g_c={g_c:g}: normal-phase excitation energy is imaginary",
            condition="normal-phase",
        )

    omega, omega1, n = params.omega, params.omega1, params.n_atoms
    ratio = g**2 / g_c**2
    root = math.sqrt(1 - ratio)

    epsilon1 = omega1 * root / n
    zeta = -math.log(1 - ratio) / 4
    eg1 = -omega1 / 2 + omega1 / (2 * n) * (root - 1)
    if second_order:
        eg1 -= (g**2 / n**2) * (
            omega1 / (2 * omega**2) + g**2 * g_c**2 / (omega**3 * (g_c**2 - g**2))
        )

    return NormalPhaseResult(epsilon1=epsilon1, eg1=eg1, zeta=zeta, second_order=second_order)
