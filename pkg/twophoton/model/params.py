"""Physical parameter sets and truncation specs."""

import math

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..config import get_settings


class ModelParams(BaseModel):
    """Physical parameters of the two-photon Dicke Hamiltonian.

    Stores the scaled atom frequency ``omega1 = N * delta``; ``delta`` is
    derived so the two can never disagree.
    """

    model_config = ConfigDict(frozen=True)

    omega: float = Field(default=1.0, gt=0, description="Field frequency")
    omega1: float = Field(ge=0, description="Scaled atom frequency N*delta")
    g: float = Field(default=0.0, ge=0, description="Collective two-photon coupling")
    n_atoms: int = Field(ge=1, description="Number of atoms N")

    @classmethod
    def from_delta(
        cls,
        delta: float,
        n_atoms: int,
        g: float = 0.0,
        omega: float = 1.0,
    ) -> "ModelParams":
        """Build parameters from the bare atomic transition frequency."""
        return cls(omega=omega, omega1=n_atoms * delta, g=g, n_atoms=n_atoms)

    @property
    def delta(self) -> float:
        """Atomic transition frequency."""
        return self.omega1 / self.n_atoms

    @property
    def j(self) -> float:
        """Pseudospin length N/2."""
        return self.n_atoms / 2

    @property
    def g_c(self) -> float:
        """Critical coupling sqrt(omega*omega1)/2."""
        return math.sqrt(self.omega * self.omega1) / 2

    @property
    def g_collapse(self) -> float:
        """Spectral collapse coupling omega/2."""
        return self.omega / 2

    @property
    def g_prime(self) -> float:
        """Dimensionless coupling g/g_c."""
        if self.g_c == 0:
            return 0.0 if self.g == 0 else math.inf
        return self.g / self.g_c

    def with_g(self, g: float) -> "ModelParams":
        """Copy with a different coupling."""
        return self.model_copy(update={"g": g})

    def with_n_atoms(self, n_atoms: int) -> "ModelParams":
        """Copy with a different atom count at fixed omega1."""
        return self.model_copy(update={"n_atoms": n_atoms})


class TruncationSpec(BaseModel):
    """Photon-number cutoff and its convergence policy."""

    model_config = ConfigDict(frozen=True)

    n_max: int = Field(default=16, ge=2, description="Photon-number cutoff")
    rel_tol: float = Field(default=1e-10, gt=0, description="Relative tolerance on E0")
    n_max_ceiling: int = Field(default=512, ge=2, description="Hard upper cutoff bound")

    @model_validator(mode="after")
    def _check_ceiling(self) -> "TruncationSpec":
        if self.n_max > self.n_max_ceiling:
            raise ValueError(
                f"n_max={self.n_max} exceeds n_max_ceiling={self.n_max_ceiling}"
            )
        return self

    @classmethod
    def from_settings(cls) -> "TruncationSpec":
        """Truncation policy from the configured defaults."""
        settings = get_settings()
        return cls(
            n_max=settings.n_max_start,
            rel_tol=settings.rel_tol,
            n_max_ceiling=settings.n_max_ceiling,
        )

    def fixed(self, n_max: int) -> "TruncationSpec":
        """Truncation pinned at one cutoff (no doubling)."""
        return TruncationSpec(n_max=n_max, rel_tol=self.rel_tol, n_max_ceiling=n_max)
