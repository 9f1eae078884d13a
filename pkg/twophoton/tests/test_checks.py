"""Tests for the acceptance-check registry and the fast checks."""

import pytest

from twophoton.checks import (
    BaseCheck,
    CheckRegistry,
    CheckResult,
    UnknownCheckError,
    VerifyContext,
    build_registry,
)
from twophoton.checks.crossval import CrossValidationCheck
from twophoton.checks.scaling import GapExponentCheck, UniversalCheck
from twophoton.checks.solver import DenseOracleCheck
from twophoton.checks.symmetry import DecoupledCheck, ParityCheck

ALL_CHECKS = [
    "parity",
    "decoupled",
    "dense-oracle",
    "crossval",
    "critical",
    "gap-exponent",
    "critical-limits",
    "critical-exponents",
    "universal",
    "collapse",
]


class PassingCheck(BaseCheck):
    name = "passing"
    description = "Always passes"

    def evaluate(self) -> CheckResult:
        return self._success({"value": 1.0})


class ExplodingCheck(BaseCheck):
    name = "exploding"
    description = "Raises"
    slow = True

    def evaluate(self) -> CheckResult:
        raise RuntimeError("boom")


@pytest.fixture
def context():
    return VerifyContext(omega=1.0, omega1=0.5, workers=2)


class TestCheckRegistry:
    """Tests for CheckRegistry."""

    def test_registers_all_checks_in_order(self, context):
        """Should register every acceptance check, cheap ones first."""
        registry = build_registry(context)

        assert registry.names() == ALL_CHECKS
        assert len(registry) == 10
        assert "parity" in registry

    def test_resolve_filters(self, context):
        """Should honour --only and --skip-slow."""
        registry = build_registry(context)

        assert registry.resolve(["universal", "parity"]) == ["parity", "universal"]
        fast = registry.resolve(skip_slow=True)
        assert "crossval" not in fast
        assert "parity" in fast
        assert "gap-exponent" in fast

    def test_unknown_check(self, context):
        """Should raise UnknownCheckError naming the bad check."""
        registry = build_registry(context)

        with pytest.raises(UnknownCheckError, match="nope"):
            registry.resolve(["nope"])

    @pytest.mark.asyncio
    async def test_execute_records_timing(self, context):
        """Should time successful checks."""
        registry = CheckRegistry()
        registry.register(PassingCheck(context))

        result = await registry.execute("passing")

        assert result.success
        assert result.duration_ms >= 0
        assert "value=1" in result.summary()

    @pytest.mark.asyncio
    async def test_execute_wraps_exceptions(self, context):
        """Should turn exceptions into failed results."""
        registry = CheckRegistry()
        registry.register(ExplodingCheck(context))

        result = await registry.execute("exploding")

        assert not result.success
        assert "RuntimeError: boom" in result.error
        assert result.summary() == result.error

    @pytest.mark.asyncio
    async def test_execute_unknown(self, context):
        """Should report an unknown name as a failed result."""
        result = await CheckRegistry().execute("missing")

        assert not result.success
        assert "Unknown check" in result.error

    @pytest.mark.asyncio
    async def test_run_all_keeps_order(self, context):
        """Should run checks in the given order."""
        registry = CheckRegistry()
        registry.register(PassingCheck(context))
        registry.register(ExplodingCheck(context))

        results = await registry.run_all(["exploding", "passing"])

        assert [r.check_name for r in results] == ["exploding", "passing"]


class TestFastChecks:
    """Acceptance checks that run in seconds."""

    def test_parity(self, context):
        """Should find parity exact to 1e-12."""
        result = ParityCheck(context).evaluate()

        assert result.success, result.error
        assert result.data["max_commutator"] <= 1e-12

    def test_decoupled(self, context):
        """Should reproduce the decoupled limit exactly."""
        result = DecoupledCheck(context).evaluate()

        assert result.success, result.error

    def test_gap_exponent(self, context):
        """Should fit exponent 1/2 on both sides of g_c."""
        result = GapExponentCheck(context).evaluate()

        assert result.success, result.error
        assert result.data["slope_normal"] == pytest.approx(0.5, abs=0.005)

    def test_universal(self, context):
        """Should pass the harmonic and virial checks."""
        result = UniversalCheck(context).evaluate()

        assert result.success, result.error
        assert result.data["resolved_points"] > 0

    @pytest.mark.slow
    def test_dense_oracle(self, context):
        """Should match dense diagonalization on randomized instances."""
        result = DenseOracleCheck(context).evaluate()

        assert result.success, result.error

    @pytest.mark.slow
    def test_crossval(self):
        """Should keep ED within the energy and Jz tolerances of the closed forms."""
        context = VerifyContext(omega=1.0, omega1=0.5, workers=2, crossval_points=12)

        result = CrossValidationCheck(context).evaluate()

        assert result.success, result.error
        assert result.data["points_compared"] > 0
        assert result.data["failed_rows"] == 0
