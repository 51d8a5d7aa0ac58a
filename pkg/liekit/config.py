from __future__ import annotations

from functools import lru_cache

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

HARD_CANDIDATE_CAP = 2**24


class Settings(BaseSettings):
    """Kernel and CLI configuration loaded from ``LIEKIT_*`` environment variables."""

    threads: int = 1
    structlog_level: str = "WARNING"

    search_chunk_size: int = 512
    exemplar_limit: int = 10
    max_search_candidates: int = HARD_CANDIDATE_CAP

    model_config = SettingsConfigDict(
        env_prefix="LIEKIT_",
        case_sensitive=False,
        extra="ignore",
    )

    @field_validator("threads", "search_chunk_size")
    @classmethod
    def _at_least_one(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be at least 1")
        return value

    @field_validator("max_search_candidates")
    @classmethod
    def _within_hard_cap(cls, value: int) -> int:
        return max(1, min(value, HARD_CANDIDATE_CAP))

    @field_validator("structlog_level")
    @classmethod
    def _upper_level(cls, value: str) -> str:
        return value.upper()


@lru_cache
def get_settings() -> Settings:
    return Settings()
