"""Exact-symmetry checks: Z4 parity and the decoupled limit."""

import numpy as np

from ..exact.cutoff import converge_cutoff
from ..model.hamiltonian import assemble_hamiltonian
from ..model.params import ModelParams, TruncationSpec
from ..model.parity import parity_operator
from ..theory.normal import normal_phase
from .base import BaseCheck, CheckResult

EXACT_TOLERANCE = 1e-12


class ParityCheck(BaseCheck):
    """[H, Pi] = 0 and Pi^4 = I across sizes, cutoffs and couplings."""

    name = "parity"
    description = "Z4 parity commutes with H and has order four"

    sizes = (1, 2, 5, 20)
    cutoffs = (4, 64)

    def evaluate(self) -> CheckResult:
        worst_commutator = 0.0
        worst_order = 0.0
        for n_atoms in self.sizes:
            for n_max in self.cutoffs:
                pi = parity_operator(n_atoms, n_max).matrix
                identity = np.eye(pi.shape[0])
                order_err = np.abs((pi @ pi @ pi @ pi).toarray() - identity).max()
                worst_order = max(worst_order, float(order_err))
                for g in (0.0, 0.3 * self.context.omega):
                    params = ModelParams(
                        omega=self.context.omega, omega1=self.context.omega1, g=g, n_atoms=n_atoms
                    )
                    h = assemble_hamiltonian(params, TruncationSpec().fixed(n_max))
                    commutator = (h.matrix @ pi - pi @ h.matrix).tocoo()
                    if commutator.nnz:
                        worst_commutator = max(worst_commutator, float(np.abs(commutator.data).max()))

        data = {"max_commutator": worst_commutator, "max_order_error": worst_order}
        passed = worst_commutator <= EXACT_TOLERANCE and worst_order <= EXACT_TOLERANCE
        return self._verdict(passed, data, f"parity broken: {data}")


class DecoupledCheck(BaseCheck):
    """g = 0: E0 = -N delta/2, <Jz>/N = -1/2, gap = min(delta, omega), zeta = 0."""

    name = "decoupled"
    description = "Decoupled-limit energies and observables are exact"

    cases = ((4, 0.1), (10, 0.05), (3, 0.7))

    def evaluate(self) -> CheckResult:
        errors: dict[str, float] = {"energy": 0.0, "jz": 0.0, "gap": 0.0, "zeta": 0.0}
        for n_atoms, delta in self.cases:
            params = ModelParams.from_delta(delta, n_atoms, g=0.0, omega=self.context.omega)
            solution = converge_cutoff(params, TruncationSpec(n_max=4, n_max_ceiling=8))
            errors["energy"] = max(errors["energy"], abs(solution.ground_energy + n_atoms * delta / 2))
            errors["jz"] = max(errors["jz"], abs(solution.jz_per_atom + 0.5))
            errors["gap"] = max(errors["gap"], abs(solution.gap - min(delta, params.omega)))
            errors["zeta"] = max(errors["zeta"], abs(normal_phase(params).zeta))

        passed = all(value <= EXACT_TOLERANCE for value in errors.values())
        return self._verdict(passed, errors, f"decoupled limit off: {errors}")
