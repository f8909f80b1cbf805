"""Configuration management using Pydantic Settings"""
from pydantic_settings import BaseSettings, SettingsConfigDict

from .models import Caps


class Settings(BaseSettings):
    """Settings loaded from ARTHOM_* environment variables or a .env file"""

    model_config = SettingsConfigDict(
        env_prefix="ARTHOM_",
        env_file=".env",
        case_sensitive=True,
        extra="ignore",
    )

    # Computation caps
    CAP_RESOLUTION: int = 32
    CAP_ENUMERATION: int = 512
    CAP_PATH_LENGTH: int = 64
    CAP_CODIM: int = 8
    CAP_DIMENSION: int = 64

    # Logging
    LOG_LEVEL: str = "INFO"

    # HTTP service
    HOST: str = "0.0.0.0"
    PORT: int = 8000
    CORS_ORIGINS: str = "*"

    def caps(self) -> Caps:
        """Caps value object built from the configured defaults"""
        return Caps(
            resolution=self.CAP_RESOLUTION,
            enumeration=self.CAP_ENUMERATION,
            path_length=self.CAP_PATH_LENGTH,
            codim=self.CAP_CODIM,
            dimension=self.CAP_DIMENSION,
        )

    def get_cors_origins_list(self) -> list:
        """Parse CORS origins from comma-separated string"""
        if self.CORS_ORIGINS == "*":
            return ["*"]
        return [origin.strip() for origin in self.CORS_ORIGINS.split(",")]


# Global settings instance
settings = Settings()
