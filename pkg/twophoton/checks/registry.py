"""Registry for acceptance checks run by ``twophoton verify``."""

import logging
import time
from collections.abc import Sequence

from ..logging_config import debug_log
from .base import BaseCheck, CheckResult

logger = logging.getLogger("twophoton.checks.registry")


class UnknownCheckError(KeyError):
    """Requested check name is not registered."""


class CheckRegistry:
    """Registry for managing acceptance checks."""

    def __init__(self):
        """Initialize empty registry."""
        self._checks: dict[str, BaseCheck] = {}

    def register(self, check: BaseCheck) -> BaseCheck:
        """Register a check instance under its name."""
        self._checks[check.name] = check
        logger.debug(f"Registered check: {check.name}")
        return check

    def get_check(self, name: str) -> BaseCheck | None:
        """Get a registered check by name."""
        return self._checks.get(name)

    def names(self) -> list[str]:
        """Registered check names in registration order."""
        return list(self._checks)

    def resolve(self, only: Sequence[str] | None = None, skip_slow: bool = False) -> list[str]:
        """
        Names to run, in registration order.

        Raises:
            UnknownCheckError: if ``only`` names an unregistered check
        """
        if only:
            unknown = [name for name in only if name not in self._checks]
            if unknown:
                raise UnknownCheckError(
                    f"Unknown check(s): {', '.join(unknown)}. Available: {', '.join(self.names())}"
                )
            selected = [name for name in self._checks if name in set(only)]
        else:
            selected = self.names()
        if skip_slow:
            selected = [name for name in selected if not self._checks[name].slow]
        return selected

    async def execute(self, name: str) -> CheckResult:
        """
        Execute one check; exceptions become failed results.

        Args:
            name: Registered check name

        Returns:
            CheckResult with timing
        """
        # #region debug
        debug_log("CheckRegistry", f"Running check: {name}")
        # #endregion

        check = self.get_check(name)
        if check is None:
            logger.error(f"Unknown check requested: {name}")
            return CheckResult(success=False, check_name=name, error=f"Unknown check '{name}'")

        start_time = time.perf_counter()
        try:
            result = await check.run()
        except Exception as e:
            logger.exception(f"Check {name} failed with error: {e}")
            result = CheckResult(success=False, check_name=name, error=f"{type(e).__name__}: {e}")

        duration_ms = int((time.perf_counter() - start_time) * 1000)
        logger.info(f"Check {name} completed in {duration_ms}ms, success={result.success}")

        # #region debug
        debug_log("CheckRegistry", f"Check completed: {name}", {
            "success": result.success,
            "duration_ms": duration_ms,
            "error": result.error,
        })
        # #endregion

        return result.model_copy(update={"duration_ms": duration_ms})

    async def run_all(self, names: Sequence[str]) -> list[CheckResult]:
        """Run checks one after another; heavy checks parallelize internally."""
        return [await self.execute(name) for name in names]

    def __contains__(self, name: str) -> bool:
        """Check if a check is registered."""
        return name in self._checks

    def __len__(self) -> int:
        """Get number of registered checks."""
        return len(self._checks)
