"""Exact diagonalization against the effective theory at N = 100."""

import logging

from ..errors import DomainError
from ..exact.cutoff import converge_cutoff
from ..theory.asymptotics import ground_energy, jz_thermo
from ..theory.critical import critical_couplings
from .base import BaseCheck, CheckResult

logger = logging.getLogger("twophoton.checks.crossval")

ENERGY_TOLERANCE = 0.01
JZ_TOLERANCE = 0.02
EXCLUDED_WINDOW = 0.05
DEPARTURE_THRESHOLD = 0.01
LOCATION_TOLERANCE = 0.02


class CrossValidationCheck(BaseCheck):
    """E_g/omega1 and <Jz>/N from ED track the closed forms away from g_c."""

    name = "crossval"
    description = "Ground energy and pseudospin agree with the effective theory"
    slow = True

    def evaluate(self) -> CheckResult:
        context = self.context
        rows = context.crossval_rows()
        g_c = context.base(context.crossval_size).g_c

        worst_energy = 0.0
        worst_jz = 0.0
        compared = 0
        failed = [row.g for row in rows if row.solution is None]
        for row in rows:
            if row.solution is None or abs(row.g - g_c) < EXCLUDED_WINDOW * g_c:
                continue
            try:
                analytic = ground_energy(row.params)
            except DomainError as e:
                logger.warning(f"No analytic energy at g={row.g:g}: {e}")
                continue
            omega1 = row.params.omega1
            worst_energy = max(worst_energy, abs(row.solution.ground_energy - analytic) / omega1)
            worst_jz = max(worst_jz, abs(row.solution.jz_per_atom - jz_thermo(row.params)))
            compared += 1

        data = {
            "max_energy_error": worst_energy,
            "max_jz_error": worst_jz,
            "points_compared": compared,
            "failed_rows": len(failed),
        }
        passed = (
            not failed
            and compared > 0
            and worst_energy <= ENERGY_TOLERANCE
            and worst_jz <= JZ_TOLERANCE
        )
        return self._verdict(passed, data, f"ED/theory mismatch: {data}")


class CriticalCheck(BaseCheck):
    """g_c from the closed form and from where ED <Jz>/N leaves -1/2."""

    name = "critical"
    description = "Critical coupling located by closed form and by ED"
    slow = True

    bisection_steps = 12

    def _departure(self, g: float) -> float:
        params = self.context.base(self.context.crossval_size, g)
        return converge_cutoff(params, self.context.trunc).jz_per_atom + 0.5

    def evaluate(self) -> CheckResult:
        context = self.context
        points = critical_couplings(context.omega, context.omega1)
        base = context.base(context.crossval_size)
        closed_form_ok = (
            abs(points.g_c - base.g_c) <= 1e-15 * base.g_c
            and points.g_collapse == context.omega / 2
        )

        # bracket the threshold crossing, then bisect
        low, high = 0.8 * points.g_c, min(1.2 * points.g_c, 0.98 * points.g_collapse)
        if self._departure(low) >= DEPARTURE_THRESHOLD or self._departure(high) < DEPARTURE_THRESHOLD:
            return self._failure(
                "threshold crossing not bracketed in [0.8 g_c, 1.2 g_c]",
                {"g_c": points.g_c},
            )
        for _ in range(self.bisection_steps):
            middle = (low + high) / 2
            if self._departure(middle) < DEPARTURE_THRESHOLD:
                low = middle
            else:
                high = middle
        located = (low + high) / 2
        offset = abs(located - points.g_c) / points.g_c

        data = {
            "g_c": points.g_c,
            "g_c_ed": located,
            "relative_offset": offset,
            "g_collapse": points.g_collapse,
        }
        passed = closed_form_ok and offset <= LOCATION_TOLERANCE
        return self._verdict(passed, data, f"ED departure point off by {offset:.3%}")
