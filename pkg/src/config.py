"""
Configuration management for the group determinant toolkit.
"""
from pathlib import Path
from typing import Optional

from pydantic import AliasChoices, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


def _env(name: str, field: str) -> AliasChoices:
    return AliasChoices(name, field)


class Settings(BaseSettings):
    """Application settings with environment variable support."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
        populate_by_name=True,
    )

    # Logging
    log_level: str = Field("INFO", validation_alias=_env("GRPDET_LOG_LEVEL", "log_level"))
    log_json: bool = Field(False, validation_alias=_env("GRPDET_LOG_JSON", "log_json"))

    # Census storage
    store_path: str = Field(
        "census_store.jsonl", validation_alias=_env("GRPDET_STORE", "store_path")
    )
    checkpoint_path: Optional[str] = Field(
        None, validation_alias=_env("GRPDET_CHECKPOINT", "checkpoint_path")
    )
    checkpoint_every: int = Field(
        1000, ge=1, validation_alias=_env("GRPDET_CHECKPOINT_EVERY", "checkpoint_every")
    )
    checkpoint_cursors: int = Field(
        100_000, ge=1, validation_alias=_env("GRPDET_CHECKPOINT_CURSORS", "checkpoint_cursors")
    )
    block_size: int = Field(2000, ge=1, validation_alias=_env("GRPDET_BLOCK_SIZE", "block_size"))
    workers: int = Field(1, ge=1, validation_alias=_env("GRPDET_WORKERS", "workers"))

    # Deciders
    orbit_scan_bound: int = Field(
        64, ge=1, validation_alias=_env("GRPDET_ORBIT_SCAN_BOUND", "orbit_scan_bound")
    )
    trial_division_bound: int = Field(
        10**6, ge=2, validation_alias=_env("GRPDET_TRIAL_BOUND", "trial_division_bound")
    )

    # Realizer
    verify_direct: bool = Field(True, validation_alias=_env("GRPDET_VERIFY_DIRECT", "verify_direct"))

    def get_store_path(self, override: Optional[str] = None) -> Path:
        """Get the census store path, preferring an explicit override."""
        return Path(override or self.store_path)

    def get_checkpoint_path(self, store_path: Optional[Path] = None) -> Path:
        """Get the checkpoint path, derived from the store path when unset."""
        if self.checkpoint_path:
            return Path(self.checkpoint_path)
        store = store_path or self.get_store_path()
        return store.with_name(store.name + ".ckpt.json")


# Global settings instance
settings = Settings()
