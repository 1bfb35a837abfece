# app/config/settings/testing.py
from app.config.settings.base import BackendBaseSettings
from app.config.settings.environment import Environment

class BackendTestSettings(BackendBaseSettings):
    """Settings used by the pytest suite"""
    DESCRIPTION: str | None = "Testing Environment - Ring Lifetime Flow"
    DEBUG: bool = False
    ENVIRONMENT: Environment = Environment.TESTING

    LOG_LEVEL: str = "WARNING"
    LOG_DIR: str | None = None
