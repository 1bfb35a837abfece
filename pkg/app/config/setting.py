# app/config/setting.py
"""
Settings manager - picks the environment-specific settings class
"""
from decouple import config
from app.config.settings.base import BackendBaseSettings
from app.config.settings.development import BackendDevSettings
from app.config.settings.testing import BackendTestSettings
from app.config.settings.production import BackendProdSettings

# Determine environment from .env file
ENV = config("ENVIRONMENT", default="DEV")

def get_settings(env: str | None = None) -> BackendBaseSettings:
    """
    Factory function to return appropriate settings based on environment
    """
    env_map = {
        "DEV": BackendDevSettings,
        "DEVELOPMENT": BackendDevSettings,
        "TEST": BackendTestSettings,
        "TESTING": BackendTestSettings,
        "PROD": BackendProdSettings,
        "PRODUCTION": BackendProdSettings,
    }

    settings_class = env_map.get((env or ENV).upper(), BackendDevSettings)
    return settings_class()


# Create global settings instance
settings = get_settings()


def validate_settings(current: BackendBaseSettings | None = None):
    """Validate numeric settings before a run"""
    current = current or settings
    errors = []

    for name in ("LP_PIVOT_TOL", "LP_FEASIBILITY_TOL", "ANALYTIC_FEASIBILITY_TOL",
                 "AGREEMENT_TOL", "CLASSIFY_TOL_FACTOR", "BRANCH_EQUALITY_TOL"):
        if not getattr(current, name) > 0:
            errors.append(f"{name} must be positive")

    if current.LP_BLAND_SWITCH_FACTOR < 1 or current.LP_ITERATION_FACTOR < 1:
        errors.append("LP_BLAND_SWITCH_FACTOR and LP_ITERATION_FACTOR must be >= 1")

    if not 6 <= current.CSV_SIGNIFICANT_DIGITS <= 17:
        errors.append("CSV_SIGNIFICANT_DIGITS must lie in 6..17")

    if current.HEATMAP_RESOLUTION < 2:
        errors.append("HEATMAP_RESOLUTION must be at least 2")

    if errors:
        raise ValueError(f"Configuration errors: {', '.join(errors)}")

    return True
