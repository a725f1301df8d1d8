from typing import Optional

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Application Settings
    APP_NAME: str = "signed-simsun"
    LOG_LEVEL: str = "INFO"
    LOG_DIR: Optional[str] = None

    # Enumeration caps (largest n that may be enumerated exhaustively)
    SIGNED_ENUMERATION_CAP: int = 9
    SYMMETRIC_ENUMERATION_CAP: int = 10
    SIMSUN_MAX_N: Optional[int] = None

    # Power series settings
    SERIES_DIGITS: int = 60
    SERIES_MAX_ORDER: int = 24
    SERIES_REL_TOL: float = 1e-6

    # Worker pool
    DEFAULT_JOBS: int = 1

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = True


# Create settings instance
settings = Settings()


def get_signed_cap() -> int:
    """Return the largest n for which B_n may be enumerated."""
    if settings.SIMSUN_MAX_N is not None:
        return settings.SIMSUN_MAX_N
    return settings.SIGNED_ENUMERATION_CAP


def get_symmetric_cap() -> int:
    """Return the largest n for which S_n may be enumerated."""
    if settings.SIMSUN_MAX_N is not None:
        return settings.SIMSUN_MAX_N
    return settings.SYMMETRIC_ENUMERATION_CAP
