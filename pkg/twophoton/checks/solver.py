"""Iterative solvers against full dense diagonalization."""

import numpy as np
import scipy.linalg

from ..exact.solver import lowest_eigenpairs
from ..model.hamiltonian import assemble_hamiltonian
from ..model.operators import hilbert_dim
from ..model.params import ModelParams, TruncationSpec
from .base import BaseCheck, CheckResult

ORACLE_TOLERANCE = 1e-10


class DenseOracleCheck(BaseCheck):
    """Lanczos and banded paths match LAPACK on randomized small instances."""

    name = "dense-oracle"
    description = "Iterative eigenvalues match dense diagonalization"

    instances = 20
    max_dim = 500

    def _random_params(self, rng: np.random.Generator) -> tuple[ModelParams, int]:
        while True:
            n_atoms = int(rng.integers(1, 16))
            n_max = int(rng.integers(6, 48))
            if hilbert_dim(n_atoms, n_max) <= self.max_dim:
                break
        g = float(rng.uniform(0.0, 0.45)) * self.context.omega
        omega1 = float(rng.uniform(0.1, 0.9)) * self.context.omega
        return ModelParams(omega=self.context.omega, omega1=omega1, g=g, n_atoms=n_atoms), n_max

    def evaluate(self) -> CheckResult:
        rng = np.random.default_rng(self.context.seed)
        worst = {"lanczos": 0.0, "banded": 0.0}
        for _ in range(self.instances):
            params, n_max = self._random_params(rng)
            h = assemble_hamiltonian(params, TruncationSpec().fixed(n_max))
            reference = scipy.linalg.eigvalsh(h.toarray())[:4]
            for method in worst:
                values = lowest_eigenpairs(h, 4, method=method).values
                worst[method] = max(worst[method], float(np.abs(values - reference).max()))

        data = {f"max_error_{m}": v for m, v in worst.items()} | {"instances": self.instances}
        passed = all(v <= ORACLE_TOLERANCE for v in worst.values())
        return self._verdict(passed, data, f"solver disagrees with dense oracle: {worst}")
