"""
Core configuration module.

This module provides the Settings class for loading and validating
process-level configuration from environment variables using Pydantic Settings.
Experiment parameters live in TOML files (see src.models.experiment_config).

Example:
    from src.core.config import settings

    workers = settings.PHOTON_NUMERICS_THREADS
    out_dir = settings.OUTPUT_DIR
"""

from pydantic_settings import BaseSettings
from pydantic import Field
from typing import Optional


class Settings(BaseSettings):
    """Process settings loaded from environment variables."""

    # Logging
    LOG_LEVEL: str = Field("INFO", description="Logging level")
    LOG_FILE: str = Field("logs/photon_numerics.log", description="Log file path")
    ENABLE_FILE_LOGGING: bool = Field(False, description="Also write logs to LOG_FILE")

    # Parallelism
    PHOTON_NUMERICS_THREADS: Optional[int] = Field(
        None, ge=1, description="Upper bound on FFT worker threads (unset: single-threaded)"
    )
    QUADRATURE_CHUNK_SIZE: int = Field(
        4_000_000, ge=1, description="Max phase-matrix elements held by the quadrature path"
    )

    # Output
    OUTPUT_DIR: str = Field("results", description="Default report directory")

    class Config:
        """Pydantic configuration."""
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = True
        extra = "ignore"


# Global settings instance
settings = Settings()
