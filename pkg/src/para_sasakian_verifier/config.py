"""Application configuration using Pydantic Settings."""

from functools import lru_cache
from pathlib import Path
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

BUNDLED_CATALOG = Path(__file__).resolve().parent / "data"


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="PSVERIFY_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Application Settings
    log_level: str = "WARNING"

    # Report Settings
    output_format: Literal["text", "json"] = "text"
    timestamps: bool = False

    # Sampling
    random_seed: int = 20240601
    random_param_count: int = Field(default=100, ge=1)
    einstein_sample_count: int = Field(default=20, ge=1)

    # Sweep Settings
    concurrent_sweep: bool = True

    # Catalog
    catalog_dir: Path = BUNDLED_CATALOG


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
