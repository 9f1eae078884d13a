"""Effective theory of the super-radiant phase (g_c < g < g_collapse).

Constants are evaluated in dependency order
beta -> beta1, beta2, beta0, lambda_beta -> r -> lambda1..3 -> r1,
with the field-pair sector fixed at <K0> = 1/4. Only the positive
displacement root is returned; -beta gives the same spectrum.
"""

import logging
import math

from pydantic import BaseModel, ConfigDict, Field

from ..errors import DomainError
from ..model.params import ModelParams

logger = logging.getLogger("twophoton.theory.superradiant")


class SuperradiantConstants(BaseModel):
    model_config = ConfigDict(frozen=True)

    beta: float = Field(description="Atomic displacement")
    beta1: float
    beta2: float
    beta0: float
    lambda_beta: float = Field(description="Effective field pair coupling")
    r: float = Field(description="Field squeezing parameter")
    lambda1: float
    lambda2: float
    lambda3: float
    r1: float = Field(description="Squeezing parameter of the displaced atomic mode")
    field_frequency: float = Field(description="sqrt(omega^2 - lambda_beta^2)")
    degenerate: bool = Field(default=True, description="+beta and -beta give the same spectrum")


class SuperradiantResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    epsilon2: float = Field(description="Excitation energy")
    eg2: float = Field(description="Ground-state energy")
    epsilon2_dropped: float | None = Field(
        default=None, description="Excitation energy with lambda3/N dropped from the denominator"
    )
    drop_finite_n_denominator: bool = False


def displacement_beta(params: ModelParams) -> float:
    """
    Displacement beta of the atomic mode above g_c.

    Raises:
        DomainError: naming the collapse or criticality condition
    """
    g, omega, omega1 = params.g, params.omega, params.omega1
    collapse_radicand = 1 - 4 * g**2 / omega**2
    if collapse_radicand < 0:
        raise DomainError(
            f"g={g:g} > g_collapse={params.g_collapse:g}: 1 - 4g^2/omega^2 < 0",
            condition="collapse",
        )
    if g <= params.g_c:
        raise DomainError(
            f"g={g:g} <= g_c={params.g_c:g}: no nontrivial displacement",
            condition="criticality",
        )

    denominator = 16 * g**4 / (omega * omega1) ** 2 - 4 * g**2 / omega**2
    inner = math.sqrt(collapse_radicand / denominator)
    criticality_radicand = 1 - inner
    if criticality_radicand < 0:
        raise DomainError(
            f"g={g:g}: criticality radicand {criticality_radicand:.3e} < 0",
            condition="criticality",
        )
    return math.sqrt(criticality_radicand / 2)


def _pair_bracket(lambda1: float, lambda3: float, field_frequency: float, n: int, drop: bool) -> float:
    denominator = 2 * field_frequency + (0.0 if drop else lambda3 / n)
    if denominator <= 0:
        raise DomainError(
            f"2*sqrt(omega^2 - lambda_beta^2) + lambda3/N = {denominator:.3e} <= 0",
            condition="radicand",
        )
    return 2 * lambda1**2 / denominator + lambda3


def superradiant_constants(
    params: ModelParams,
    drop_finite_n_denominator: bool = False,
) -> SuperradiantConstants:
    """All displacement and squeezing constants of the super-radiant phase."""
    g, omega, omega1, n = params.g, params.omega, params.omega1, params.n_atoms

    beta = displacement_beta(params)
    beta1 = math.sqrt(1 - beta**2)
    beta2 = 1 - beta**2 / (1 - beta**2)
    beta0 = omega1 * beta**2 - (omega1 + omega) / 2
    lambda_beta = 4 * g * beta * beta1
    if lambda_beta >= omega:
        raise DomainError(
            f"lambda_beta={lambda_beta:.12g} >= omega={omega:g}", condition="radicand"
        )
    field_frequency = math.sqrt(omega**2 - lambda_beta**2)

    r = math.log((omega - lambda_beta) / (omega + lambda_beta)) / 4
    lambda1 = 2 * g * beta1 * beta2 * math.cosh(2 * r)
    lambda2 = g * beta * math.cosh(2 * r) / beta1
    lambda3 = 2 * g * beta * math.sinh(2 * r) / beta1

    bracket = _pair_bracket(lambda1, lambda3, field_frequency, n, drop_finite_n_denominator)
    log_argument = 1 - bracket / (omega1 - lambda3 / 2)
    if log_argument <= 0:
        raise DomainError(
            f"r1 logarithm argument {log_argument:.3e} <= 0 at g={g:g}",
            condition="log-argument",
        )
    r1 = -math.log(log_argument) / 4

    return SuperradiantConstants(
        beta=beta,
        beta1=beta1,
        beta2=beta2,
        beta0=beta0,
        lambda_beta=lambda_beta,
        r=r,
        lambda1=lambda1,
        lambda2=lambda2,
        lambda3=lambda3,
        r1=r1,
        field_frequency=field_frequency,
    )


def _excitation(params: ModelParams, constants: SuperradiantConstants, drop: bool) -> float:
    omega1, n = params.omega1, params.n_atoms
    bracket = _pair_bracket(
        constants.lambda1, constants.lambda3, constants.field_frequency, n, drop
    )
    radicand = 1 - bracket / (omega1 - constants.lambda3 / 2)
    if radicand < 0:
        raise DomainError(
            f"excitation-energy radicand {radicand:.3e} < 0 at g={params.g:g}",
            condition="radicand",
        )
    return (2 * omega1 - constants.lambda3) / (2 * n) * math.sqrt(radicand)


def superradiant_phase(
    params: ModelParams,
    drop_finite_n_denominator: bool = False,
) -> SuperradiantResult:
    """
    Excitation and ground energies above g_c.

    Both variants of the excitation energy are reported: one with
    lambda3/N in the pair denominator, and with that term dropped. The
    flag selects which one feeds ``epsilon2`` and ``eg2``.
    """
    constants = superradiant_constants(params, drop_finite_n_denominator)
    variants: dict[bool, float | None] = {}
    errors: dict[bool, DomainError] = {}
    for drop in (False, True):
        try:
            variants[drop] = _excitation(params, constants, drop=drop)
        except DomainError as e:
            logger.debug(f"Excitation variant drop={drop} undefined: {e}")
            variants[drop] = None
            errors[drop] = e

    epsilon2 = variants[drop_finite_n_denominator]
    if epsilon2 is None:
        raise errors[drop_finite_n_denominator]
    epsilon_dropped = variants[True]

    omega1, n = params.omega1, params.n_atoms
    eg2 = (
        epsilon2 / 2
        - (omega1 - constants.lambda3) / (2 * n)
        + constants.field_frequency / 2
        + constants.beta0
    )
    return SuperradiantResult(
        epsilon2=epsilon2,
        eg2=eg2,
        epsilon2_dropped=epsilon_dropped,
        drop_finite_n_denominator=drop_finite_n_denominator,
    )
