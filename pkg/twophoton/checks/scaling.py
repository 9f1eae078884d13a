"""Critical-behaviour checks: gap exponent, thermodynamic limits, scaling exponents,
data collapse and the universal quartic-well solver."""

import asyncio

import numpy as np
from scipy.stats import linregress

from ..model.params import ModelParams
from ..scaling.collapse import build_collapse_set_async
from ..scaling.exponents import fit_exponent
from ..scaling.finite_size import Quantity
from ..scaling.universal import QuarticWellSpec, universal_functions
from ..theory.normal import normal_phase
from ..theory.superradiant import superradiant_phase
from .base import BaseCheck, CheckResult

LIMITS = {Quantity.ENERGY: -0.5, Quantity.JZ: -0.5, Quantity.JY2: 0.0}
# leading approach to the limit: E_g/omega1 ~ 1/N, jz ~ N^(-2/3), jy2 ~ N^(-4/3)
APPROACH_EXPONENT = {Quantity.ENERGY: 1.0, Quantity.JZ: 2 / 3, Quantity.JY2: 4 / 3}
EXPONENT_TOLERANCE = {Quantity.ENERGY: 0.1, Quantity.JZ: 0.05, Quantity.JY2: 0.1}


def _log_slope(x: np.ndarray, y: np.ndarray) -> float:
    return float(linregress(np.log(x), np.log(y)).slope)


class GapExponentCheck(BaseCheck):
    """Excitation energies vanish as |g - g_c|^(1/2) from both sides."""

    name = "gap-exponent"
    description = "Gap closes with exponent 1/2"

    def evaluate(self) -> CheckResult:
        base = self.context.base(100)
        g_c = base.g_c
        distances = np.logspace(-6, -4, 9) * g_c

        eps1 = [normal_phase(base.with_g(g_c - d)).epsilon1 for d in distances]
        eps2 = [superradiant_phase(base.with_g(g_c + d)).epsilon2 for d in distances]
        slope1 = _log_slope(distances, np.array(eps1))
        slope2 = _log_slope(distances, np.array(eps2))

        data = {"slope_normal": slope1, "slope_superradiant": slope2}
        passed = abs(slope1 - 0.5) <= 0.005 and abs(slope2 - 0.5) <= 0.05
        return self._verdict(passed, data, f"gap exponents off 1/2: {data}")


class CriticalLimitsCheck(BaseCheck):
    """Thermodynamic limits at g_c extrapolated from ED."""

    name = "critical-limits"
    description = "E_g/omega1, <Jz>/N and <Jy^2>/N^2 limits at g_c"
    slow = True

    tolerance = 0.01

    def evaluate(self) -> CheckResult:
        context = self.context
        measured = context.critical_measurements()
        sizes = sorted(measured)
        if len(sizes) < 2:
            return self._failure(f"only {len(sizes)} sizes solved at g_c")

        data: dict[str, float] = {}
        passed = True
        for quantity, limit in LIMITS.items():
            values = np.array([measured[n][quantity] for n in sizes])
            if quantity is Quantity.ENERGY:
                values = values / context.omega1
            x = np.array(sizes, dtype=float) ** (-APPROACH_EXPONENT[quantity])
            intercept = float(np.polyfit(x, values, 1)[1])
            data[f"{quantity.value}_limit"] = intercept
            passed &= abs(intercept - limit) <= self.tolerance
        return self._verdict(passed, data, f"extrapolated limits off: {data}")


class CriticalExponentsCheck(BaseCheck):
    """Finite-size exponents -4/3, -2/3, -4/3 at g_c."""

    name = "critical-exponents"
    description = "Finite-size scaling exponents at g_c"
    slow = True

    def evaluate(self) -> CheckResult:
        context = self.context
        measured = context.critical_measurements()
        params = context.base(context.critical_sizes[0])
        params = params.with_g(params.g_c)

        data: dict[str, float] = {}
        passed = True
        for quantity, tolerance in EXPONENT_TOLERANCE.items():
            fit = fit_exponent(context.critical_sizes, params, quantity, measured=measured)
            data[f"{quantity.value}_slope"] = fit.slope
            passed &= abs(fit.slope + quantity.exponent) <= tolerance
        return self._verdict(passed, data, f"exponents off: {data}")


class CollapseCheck(BaseCheck):
    """Rescaled ED curves for several N fall on one curve over eta in [-2, 2]."""

    name = "collapse"
    description = "Data collapse of energy, jz and jy2"
    slow = True

    max_spread = 0.1
    eta_points = 41

    def evaluate(self) -> CheckResult:
        context = self.context
        eta_grid = np.linspace(-2.0, 2.0, self.eta_points)
        results = asyncio.run(
            build_collapse_set_async(
                context.collapse_sizes,
                context.base(context.collapse_sizes[0]),
                eta_grid=eta_grid,
                trunc=context.trunc,
                workers=context.workers,
            )
        )
        data: dict[str, float] = {}
        for q, r in results.items():
            data[f"{q.value}_spread"] = r.spread
            data[f"{q.value}_eta_low"], data[f"{q.value}_eta_high"] = r.covered
        passed = all(r.spread <= self.max_spread for r in results.values())
        return self._verdict(passed, data, f"collapse spread above {self.max_spread}: {data}")


class UniversalCheck(BaseCheck):
    """Quartic-well solver: harmonic limit, virial identity with the wall term, and a resolved eta = 0."""

    name = "universal"
    description = "Universal-function solver is exact where it can be checked"

    harmonic_tolerance = 1e-6
    virial_tolerance = 1e-5

    def evaluate(self) -> CheckResult:
        base: ModelParams = self.context.base(100)

        harmonic = QuarticWellSpec.from_params(base, quartic_coeff=0.0)
        worst_harmonic = 0.0
        for point in universal_functions(harmonic, [0.5, 1.0, 2.0, 8.0]):
            w = np.sqrt(2 * point.eta)
            expected = {"e0": w / 2, "x2": 1 / (2 * w), "p2": w / 2}
            for key, value in expected.items():
                worst_harmonic = max(worst_harmonic, abs(getattr(point, key) / value - 1))

        worst_virial = 0.0
        resolved = 0
        eta_grid = np.linspace(-2.0, 4.0, 13)
        for spec in (
            QuarticWellSpec.from_params(base),
            QuarticWellSpec.from_params(base, quartic_coeff=-base.omega1**4 / (4 * base.omega)),
        ):
            k = spec.quartic_coeff
            for point in universal_functions(spec, eta_grid):
                if not point.resolved:
                    continue
                resolved += 1
                residual = abs(point.p2 - point.virial_rhs(k)) / max(1.0, abs(point.p2))
                worst_virial = max(worst_virial, residual)

        critical = universal_functions(QuarticWellSpec.from_params(base), [0.0])[0]

        data = {
            "harmonic_error": worst_harmonic,
            "virial_error": worst_virial,
            "resolved_points": resolved,
            "e0_at_zero": critical.e0,
        }
        passed = (
            worst_harmonic <= self.harmonic_tolerance
            and worst_virial <= self.virial_tolerance
            and resolved > 0
            and critical.resolved
        )
        return self._verdict(passed, data, f"universal solver off: {data}")
