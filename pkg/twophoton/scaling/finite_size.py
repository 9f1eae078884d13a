"""Finite-N predictions from the universal functions and singular-part extraction."""

from enum import Enum

from pydantic import BaseModel, ConfigDict

from ..errors import UnresolvedPointError
from ..model.params import ModelParams
from .universal import ScalingPoint
from .variable import scaling_variable

ETA_MATCH_TOLERANCE = 1e-9


class Quantity(str, Enum):
    """Observables with a known finite-size scaling exponent."""

    ENERGY = "energy"
    JZ = "jz"
    JY2 = "jy2"

    @property
    def exponent(self) -> float:
        """Leading correction exponent magnitude: value ~ N^(-exponent)."""
        return 2 / 3 if self is Quantity.JZ else 4 / 3

    @property
    def exponent_label(self) -> str:
        return "2/3" if self is Quantity.JZ else "4/3"


class RegularPart(str, Enum):
    """Which regular energy background singular_part subtracts."""

    CONSTANT = "constant"
    SHORT = "short"


class FiniteSizePrediction(BaseModel):
    model_config = ConfigDict(frozen=True)

    eg: float
    jz: float
    jy2: float

    def value(self, quantity: Quantity) -> float:
        return {Quantity.ENERGY: self.eg, Quantity.JZ: self.jz, Quantity.JY2: self.jy2}[quantity]


def analytic_finite_size(params: ModelParams, point: ScalingPoint) -> FiniteSizePrediction:
    """
    Leading finite-N ground energy, <Jz>/N and <Jy^2>/N^2 from E0, X, P.

    Raises:
        UnresolvedPointError: if ``point`` failed certification
        ValueError: if ``point.eta`` does not belong to ``params``
    """
    if not point.resolved:
        raise UnresolvedPointError(f"eta={point.eta:g} is unresolved", eta=point.eta)
    eta = scaling_variable(params)
    if abs(point.eta - eta) > ETA_MATCH_TOLERANCE * max(1.0, abs(eta)):
        raise ValueError(f"point eta={point.eta:.12g} does not match params eta={eta:.12g}")

    n, omega1 = params.n_atoms, params.omega1
    return FiniteSizePrediction(
        eg=-omega1 / 2 - omega1 / (2 * n) + n ** (-4 / 3) * point.e0,
        jz=-0.5 + omega1 / 2 * n ** (-2 / 3) * point.x2 + n ** (-4 / 3) * point.p2 / (2 * omega1),
        jy2=n ** (-4 / 3) * point.p2 / (2 * omega1),
    )


def regular_part(
    quantity: Quantity | str,
    params: ModelParams,
    regular: RegularPart = RegularPart.CONSTANT,
    zero_point: bool = True,
) -> float:
    """
    Regular background R of an observable, value = R + N^(-exponent) * F(eta).

    Args:
        quantity: energy, jz or jy2
        params: Parameters the value was computed at
        regular: Energy background variant
        zero_point: Include the -1/(2N) normal-ordering term of <Jz>/N. ED
            values carry it; analytic_finite_size does not.

    Returns:
        Background in the units of the observable
    """
    quantity = Quantity(quantity)
    n, omega, omega1, g = params.n_atoms, params.omega, params.omega1, params.g

    if quantity is Quantity.ENERGY:
        if RegularPart(regular) is RegularPart.SHORT:
            return -(omega1 / (2 * n) + omega1 / (2 * n**2))
        return -(omega1 / 2 + omega1 / (2 * n) + omega1 * g**2 / (2 * n**2 * omega**2))
    if quantity is Quantity.JZ:
        return -0.5 - (1 / (2 * n) if zero_point else 0.0)
    # Jy^2 = -N (b_dag - b)^2 / 4 has no normal-ordering constant
    return 0.0


def singular_part(
    quantity: Quantity | str,
    value: float,
    params: ModelParams,
    regular: RegularPart = RegularPart.CONSTANT,
    zero_point: bool = True,
) -> float:
    """
    Subtract the regular background and rescale by N^(exponent).

    Args:
        quantity: energy, jz or jy2
        value: Finite-N observable (E_g, <Jz>/N or <Jy^2>/N^2)
        params: Parameters the value was computed at
        regular: Energy background variant
        zero_point: See regular_part

    Returns:
        Rescaled singular part, a function of eta alone near g_c
    """
    quantity = Quantity(quantity)
    background = regular_part(quantity, params, regular, zero_point)
    return params.n_atoms ** quantity.exponent * (value - background)
