"""Acceptance checks run by ``twophoton verify``.

Each check is a named, self-contained comparison between two independent
routes to the same number (ED vs dense LAPACK, ED vs effective theory,
curves for different N). Checks marked ``slow`` run sweeps at N >= 100.
"""

from .base import BaseCheck, CheckResult
from .context import VerifyContext
from .registry import CheckRegistry, UnknownCheckError

__all__ = [
    "BaseCheck",
    "CheckResult",
    "CheckRegistry",
    "UnknownCheckError",
    "VerifyContext",
    "build_registry",
    "register_all_checks",
]


def register_all_checks(registry: CheckRegistry, context: VerifyContext) -> None:
    """
    Register every acceptance check against one shared context.

    Order matters: cheap exact checks first, then cross-validation,
    then the finite-size scaling checks that reuse the cached sweeps.

    Args:
        registry: CheckRegistry to populate
        context: Parameters and memoized ED runs shared by the checks
    """
    from .crossval import CriticalCheck, CrossValidationCheck
    from .scaling import (
        CollapseCheck,
        GapExponentCheck,
        CriticalExponentsCheck,
        CriticalLimitsCheck,
        UniversalCheck,
    )
    from .solver import DenseOracleCheck
    from .symmetry import DecoupledCheck, ParityCheck

    # =========================================================================
    # Exact identities
    # =========================================================================
    registry.register(ParityCheck(context))
    registry.register(DecoupledCheck(context))
    registry.register(DenseOracleCheck(context))

    # =========================================================================
    # ED against the effective theory
    # =========================================================================
    registry.register(CrossValidationCheck(context))
    registry.register(CriticalCheck(context))
    registry.register(GapExponentCheck(context))

    # =========================================================================
    # Finite-size scaling
    # =========================================================================
    registry.register(CriticalLimitsCheck(context))
    registry.register(CriticalExponentsCheck(context))
    registry.register(UniversalCheck(context))
    registry.register(CollapseCheck(context))


def build_registry(context: VerifyContext | None = None) -> CheckRegistry:
    """Fresh registry with all checks bound to ``context`` (defaults from settings)."""
    registry = CheckRegistry()
    register_all_checks(registry, context or VerifyContext())
    return registry
