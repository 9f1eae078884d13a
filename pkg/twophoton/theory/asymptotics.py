"""Phase-dispatching helpers and thermodynamic-limit forms."""

import math

from ..errors import DomainError
from ..model.params import ModelParams
from .normal import normal_phase
from .superradiant import displacement_beta, superradiant_phase


def _check_below_collapse(params: ModelParams) -> None:
    if params.g >= params.g_collapse:
        raise DomainError(
            f"g={params.g:g} >= g_collapse={params.g_collapse:g} (spectral collapse)",
            condition="collapse",
        )


def jz_thermo(params: ModelParams) -> float:
    """<Jz>/N as N -> infinity: -1/2 up to g_c, beta^2 - 1/2 above."""
    _check_below_collapse(params)
    if params.g <= params.g_c:
        return -0.5
    return displacement_beta(params) ** 2 - 0.5


def gap_asymptote(params: ModelParams, g: float | None = None) -> float:
    """(omega1/N) sqrt(2/g_c) |g_c - g|^(1/2), the leading gap near g_c."""
    g = params.g if g is None else g
    g_c = params.g_c
    return params.omega1 / params.n_atoms * math.sqrt(2 / g_c) * math.sqrt(abs(g_c - g))


def excitation_energy(params: ModelParams, drop_finite_n_denominator: bool = False) -> float:
    """epsilon1 below g_c, epsilon2 above, 0 at g_c."""
    _check_below_collapse(params)
    if params.g < params.g_c:
        return normal_phase(params).epsilon1
    if params.g == params.g_c:
        return 0.0
    return superradiant_phase(params, drop_finite_n_denominator).epsilon2


def ground_energy(
    params: ModelParams,
    second_order: bool = True,
    drop_finite_n_denominator: bool = False,
) -> float:
    """Effective-theory ground energy; at g_c both phases meet at -omega1/2 - omega1/(2N)."""
    _check_below_collapse(params)
    if params.g < params.g_c:
        return normal_phase(params, second_order=second_order).eg1
    if params.g == params.g_c:
        return -params.omega1 / 2 - params.omega1 / (2 * params.n_atoms)
    return superradiant_phase(params, drop_finite_n_denominator).eg2
