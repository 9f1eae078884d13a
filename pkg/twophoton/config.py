"""Configuration management for the two-photon Dicke toolkit."""

from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="TWOPHOTON_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Model defaults (energies in units of omega)
    omega: float = 1.0
    omega1: float = 0.5

    # Fock-space truncation
    n_max_start: int = 16
    n_max_ceiling: int = 512
    rel_tol: float = 1e-10
    dim_limit: int = 250_000

    # Eigensolver
    eigen_count: int = 4
    dense_limit: int = 2000
    max_bandwidth: int = 600
    lanczos_tol: float = 0.0
    lanczos_maxiter: int | None = None
    lanczos_seed: int = 0
    residual_tol: float = 1e-8

    # Sweeps
    workers: int = 4

    # Quartic-well universal functions
    well_grid_points: int = 512
    well_max_grid_points: int = 131_072
    well_rel_tol: float = 1e-7
    well_eta_floor: float = 0.05
    well_tail: float = 40.0
    well_quartic_box: float = 1.0
    well_tail_fraction: float = 0.8
    well_tail_mass_tol: float = 0.02

    # Data collapse
    collapse_bins: int = 41
    collapse_ceiling_fraction: float = 0.5

    # Output and logging
    output_dir: str = "runs"
    debug: bool = False
    log_to_file: bool = False
    log_dir: str = "data/logs"


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
