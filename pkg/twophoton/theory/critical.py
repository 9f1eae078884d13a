"""Critical and collapse couplings."""

import math

from pydantic import BaseModel, ConfigDict, Field

from ..errors import DomainError
from ..model.params import ModelParams


class CriticalPoints(BaseModel):
    model_config = ConfigDict(frozen=True)

    g_c: float = Field(description="Critical coupling sqrt(omega*omega1)/2")
    g_collapse: float = Field(description="Spectral collapse coupling omega/2")

    @property
    def transition_precedes_collapse(self) -> bool:
        return self.g_c < self.g_collapse


def critical_couplings(omega: float, omega1: float) -> CriticalPoints:
    """Closed-form g_c and g_collapse."""
    if omega <= 0 or omega1 <= 0:
        raise DomainError(
            f"omega={omega:g} and omega1={omega1:g} must both be positive", condition="domain"
        )
    return CriticalPoints(g_c=math.sqrt(omega * omega1) / 2, g_collapse=omega / 2)


def at_critical_point(params: ModelParams) -> ModelParams:
    """Same model tuned to g = g_c."""
    return params.with_g(params.g_c)
