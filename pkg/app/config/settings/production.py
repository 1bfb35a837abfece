# app/config/settings/production.py
from app.config.settings.base import BackendBaseSettings
from app.config.settings.environment import Environment

class BackendProdSettings(BackendBaseSettings):
    """Batch-run settings: quiet console, warnings and up"""
    DESCRIPTION: str | None = "Production Environment - Ring Lifetime Flow"
    DEBUG: bool = False
    ENVIRONMENT: Environment = Environment.PRODUCTION

    LOG_LEVEL: str = "WARNING"
