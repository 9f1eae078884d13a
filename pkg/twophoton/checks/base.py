"""Base acceptance check and result schema."""

import asyncio
from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Any

from pydantic import BaseModel, Field

if TYPE_CHECKING:
    from .context import VerifyContext


class CheckResult(BaseModel):
    """Standardized result from any acceptance check."""

    success: bool = Field(description="Whether the check passed")
    check_name: str = Field(description="Name of the check")
    data: dict[str, Any] = Field(
        default_factory=dict,
        description="Measured values and the bounds they were held to",
    )
    error: str | None = Field(
        default=None,
        description="Failure reason if the check did not pass",
    )
    duration_ms: int = Field(default=0, description="Wall time of the check")

    def summary(self) -> str:
        """One-line description for tables."""
        if self.success:
            return ", ".join(f"{k}={_fmt(v)}" for k, v in list(self.data.items())[:3])
        return self.error or "failed"


def _fmt(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.4g}"
    return str(value)


class BaseCheck(ABC):
    """Base class for all acceptance checks."""

    # Override in subclass
    name: str = "base_check"
    description: str = "Base acceptance check"
    slow: bool = False

    def __init__(self, context: "VerifyContext"):
        self.context = context

    async def run(self) -> CheckResult:
        """Execute the check in a worker thread."""
        return await asyncio.to_thread(self.evaluate)

    @abstractmethod
    def evaluate(self) -> CheckResult:
        """
        Compute the check.

        Returns:
            CheckResult with findings
        """
        pass

    def _success(self, data: dict[str, Any]) -> CheckResult:
        """Create a passing result."""
        return CheckResult(success=True, check_name=self.name, data=data)

    def _failure(self, error: str, data: dict[str, Any] | None = None) -> CheckResult:
        """Create a failing result."""
        return CheckResult(success=False, check_name=self.name, data=data or {}, error=error)

    def _verdict(self, passed: bool, data: dict[str, Any], error: str) -> CheckResult:
        return self._success(data) if passed else self._failure(error, data)
